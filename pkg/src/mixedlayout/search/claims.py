"""Built-in scaffolds: structure gadgets and the case analyses of the lower bound.

Gadgets place free attachments on one edge of a smiley face or of a
seven-vertex pattern and check, with crossings and rainbows only, that no
placement survives.  Claim cases replay single steps of the six-queue and
main-theorem arguments; they may additionally refute with smiley faces and
patterns, which are already known to be impossible in the older generations
those steps live in.
"""

from __future__ import annotations

from ..layout import PageKind
from ..patterns import ALL_KINDS, BASIC_KINDS, P1, P1A, P2, SMILEY, Template, WitnessKind
from .certify import AttachmentConstraint, Scaffold, StepReport, certify_step, free

S, Q = PageKind.STACK, PageKind.QUEUE
MIXED = AttachmentConstraint.MIXED


def _template_scaffold(template: Template, names: tuple[str, ...]) -> Scaffold:
    return Scaffold(names, tuple((names[i], names[j], kind) for i, j, kind in template.edges))


SMILEY_NAMES = ("a", "b", "u", "v", "c", "d")
PATTERN_NAMES = tuple(f"p{i}" for i in range(1, 8))

# gadget name -> (template, edge the free vertices attach to)
GADGETS: dict[str, tuple[Template, tuple[str, str]]] = {
    "smiley": (SMILEY, ("u", "v")),
    "p1": (P1, ("p4", "p5")),
    "p1a": (P1A, ("p4", "p5")),
    "p2": (P2, ("p2", "p4")),
}

DEFAULT_ATTACHMENTS = {"smiley": 3, "p1": 5, "p1a": 5, "p2": 5}


def gadget_scaffold(name: str, attachments: int | None = None) -> Scaffold:
    template, target = GADGETS[name]
    count = DEFAULT_ATTACHMENTS[name] if attachments is None else attachments
    names = SMILEY_NAMES if template is SMILEY else PATTERN_NAMES
    return _template_scaffold(template, names).with_free(free(target, count, prefix="x"))


def certify_gadget(name: str, attachments: int | None = None) -> StepReport:
    """Free attachments on the gadget's edge, refuted by crossings and rainbows only."""
    if name not in GADGETS:
        raise ValueError(f"unknown gadget {name!r}; choose from {sorted(GADGETS)}")
    return certify_step(gadget_scaffold(name, attachments), BASIC_KINDS, scope=name)


# -- six queue-attachments --------------------------------------------------

L4_ORDER = ("u", *(f"x{i}" for i in range(1, 8)), "v")
L4_EDGES = (("u", "v", Q),) + tuple((end, f"x{i}", Q) for i in range(1, 8) for end in ("u", "v"))
L4_MIRROR = {"u": "v", "v": "u", **{f"x{i}": f"x{8 - i}" for i in range(1, 8)}}


def l4_base() -> Scaffold:
    """u < x1 < ... < x7 < v: seven queue-attachments of the queue-edge (u, v)."""
    return Scaffold(L4_ORDER, L4_EDGES)


def _mixed_on(end: str, x: str, name: str, region=(None, None)):
    # attachment of (end, x) whose stack-edge goes to x
    return free((end, x), 1, prefix=name, constraint=MIXED, stack_endpoint=x, region=region)


def l4_scaffolds(case: str, i: int, *, free_partner: bool = False) -> list[tuple[str, Scaffold]]:
    """v-side scaffolds of one claim for the edge (v, x_i)."""
    x = f"x{i}"
    base = l4_base()
    if case == "l4c1":
        return [("", base.with_free(_mixed_on("v", x, "w", (None, "u"))))]
    if case == "l4c2":
        return [("", base.with_free(_mixed_on("v", x, "w", ("x1", "x7"))))]
    if case == "l4c3":
        nxt = f"x{i + 1}"
        partner = (
            free(("v", nxt), 1, prefix="w'")
            if free_partner
            else _mixed_on("v", nxt, "w'")
        )
        return [("", base.with_free(_mixed_on("v", x, "w", ("x7", "v")), partner))]
    if case == "l4c4":
        prev = f"x{i - 1}"
        w = _mixed_on("v", x, "w", ("u", "x1"))
        return [
            ("w'<w", base.with_free(w, _mixed_on("u", prev, "w'", (None, "w")))),
            (f"{x}<w'", base.with_free(w, _mixed_on("u", prev, "w'", (x, None)))),
        ]
    raise ValueError(case)


L4_RANGES = {"l4c1": range(2, 7), "l4c2": range(2, 7), "l4c3": range(2, 7), "l4c4": range(3, 6)}

L4_NOTES = {
    "l4c4": (
        "placements of w' between w and x_i are excluded by the between-x1-x7 and "
        "u-side between-u-x1 cases (l4c2, l4c3) and are not re-enumerated here",
    ),
}


def _l4_claim(case: str) -> StepReport:
    parts = []
    for i in L4_RANGES[case]:
        for side, mirror in (("v", False), ("u", True)):
            for label, sc in l4_scaffolds(case, i):
                if mirror:
                    sc = sc.mirrored(L4_MIRROR)
                    edge = f"(u,x{8 - i})"
                else:
                    edge = f"(v,x{i})"
                scope = f"{side}-side w on {edge}" + (f" {label}" if label else "")
                parts.append(certify_step(sc, ALL_KINDS, scope=scope.replace(" ", "_")))
    return StepReport.merge(parts, L4_NOTES.get(case, ()))


# -- six configurations of five mixed-attachments of (u, v) -----------------

T1_MIRROR = {"u": "v", "v": "u", **{f"x{i}": f"x{6 - i}" for i in range(1, 6)}}


def _t1_base(order: tuple[str, ...], u_kind: PageKind) -> Scaffold:
    v_kind = Q if u_kind is S else S
    edges = (("u", "v", Q),) + tuple(
        e for i in range(1, 6) for e in (("u", f"x{i}", u_kind), ("v", f"x{i}", v_kind))
    )
    return Scaffold(order, edges)


_XS = tuple(f"x{i}" for i in range(1, 6))

# case -> (order, kind of (u, x_i), queue-edge that w attaches to)
T1_CASES = {
    1: (("u", "v", *_XS), Q, ("u", "x2")),
    2: (("u", "v", *_XS), S, ("v", "x3")),
    3: (("u", *_XS, "v"), S, ("v", "x4")),
}


def t1_scaffolds(case: int) -> list[tuple[str, Scaffold]]:
    mirrored = case > 3
    order, u_kind, (end, x) = T1_CASES[case - 3 if mirrored else case]
    base = _t1_base(order, u_kind)
    out = []
    for stack_end in (x, end):
        sc = base.with_free(free((end, x), 1, prefix="w", constraint=MIXED, stack_endpoint=stack_end))
        if mirrored:
            sc = sc.mirrored(T1_MIRROR)
            label = f"stack_edge=(w,{T1_MIRROR[stack_end]})"
        else:
            label = f"stack_edge=(w,{stack_end})"
        out.append((label, sc))
    return out


def _t1_claim(case: int) -> StepReport:
    return StepReport.merge([certify_step(sc, ALL_KINDS, scope=label) for label, sc in t1_scaffolds(case)])


CLAIM_IDS = ("l4c1", "l4c2", "l4c3", "l4c4", *(f"t1c{i}" for i in range(1, 7)))


def certify_claim(case_id: str) -> StepReport:
    """Certify one built-in proof case, e.g. ``L4C2`` or ``T1C5``."""
    case = case_id.lower()
    if case not in CLAIM_IDS:
        raise ValueError(f"unknown case {case_id!r}; choose from {', '.join(c.upper() for c in CLAIM_IDS)}")
    if case.startswith("l4"):
        return _l4_claim(case)
    return _t1_claim(int(case[-1]))


def proof_kinds() -> dict[str, frozenset[WitnessKind]]:
    """Witness kinds the written arguments give as reasons, per case."""
    C, R, SM = WitnessKind.CROSSING, WitnessKind.RAINBOW, WitnessKind.SMILEY
    t1 = {1: {C, R, WitnessKind.P1A, WitnessKind.P2}, 2: {C, R, WitnessKind.P1}, 3: {C, R, WitnessKind.P1, WitnessKind.P2}}
    out = {"l4c1": frozenset({R}), "l4c2": frozenset({SM}), "l4c3": frozenset({C, SM}), "l4c4": frozenset({C})}
    for i in range(1, 7):
        out[f"t1c{i}"] = frozenset(t1[i if i <= 3 else i - 3])
    return out
