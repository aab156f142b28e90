"""Certification of local proof steps by exhaustive placement.

A :class:`Scaffold` freezes a few vertices in a relative order with paged
edges and then declares free attachments: new vertices attached to a named
edge, with optional page and region constraints.  :func:`certify_step`
tries every way to insert the free vertices into the order and every page
assignment the constraints allow.  A partial placement is refuted as soon as
it exhibits a witness from the vocabulary; a full placement without one is a
valid extension, and its existence makes the step refutable.

Only the declared vertices and edges take part: this certifies the local
argument, not the non-existence of a layout for any whole graph.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, replace
from typing import Collection, Mapping

from ..errors import ScaffoldError
from ..layout import PageId, PageKind
from ..patterns import (
    BASIC_KINDS,
    STRUCTURE_KINDS,
    TEMPLATES,
    PagedOrder,
    Witness,
    WitnessKind,
    basic_witnesses,
    find_structures,
    pair_witness,
)

MAX_VERTICES = 16
MAX_PER_SPEC = 5

S, Q = PageKind.STACK, PageKind.QUEUE
_PAGE = {S: PageId(S, 0), Q: PageId(Q, 0)}

# the order in which witness kinds are preferred when several refute one placement
WITNESS_PRIORITY = (WitnessKind.CROSSING, WitnessKind.RAINBOW, *STRUCTURE_KINDS)


class AttachmentConstraint(str, enum.Enum):
    FREE = "Free"
    STACK = "ForcedStack"
    QUEUE = "ForcedQueue"
    MIXED = "ForcedMixed"


Region = tuple["str | None", "str | None"]


@dataclass(frozen=True)
class FreeAttachmentSpec:
    """``len(names)`` new vertices attached to ``target_edge``.

    For ``MIXED``, ``stack_endpoint`` names the target endpoint joined by the
    stack-edge (``None`` allows either).  ``region`` bounds the new vertices
    strictly between two already declared vertices; ``None`` leaves that
    side open.
    """

    target_edge: tuple[str, str]
    names: tuple[str, ...]
    constraint: AttachmentConstraint = AttachmentConstraint.FREE
    stack_endpoint: str | None = None
    region: Region = (None, None)

    @property
    def count(self) -> int:
        return len(self.names)

    def page_options(self) -> list[tuple[PageKind, PageKind]]:
        """Kinds for the edges to ``target_edge[0]`` and ``target_edge[1]``."""
        c = self.constraint
        if c is AttachmentConstraint.FREE:
            return [(S, S), (S, Q), (Q, S), (Q, Q)]
        if c is AttachmentConstraint.STACK:
            return [(S, S)]
        if c is AttachmentConstraint.QUEUE:
            return [(Q, Q)]
        if self.stack_endpoint is None:
            return [(S, Q), (Q, S)]
        return [(S, Q)] if self.stack_endpoint == self.target_edge[0] else [(Q, S)]


def free(
    target: tuple[str, str],
    count: int = 1,
    prefix: str = "w",
    constraint: AttachmentConstraint = AttachmentConstraint.FREE,
    stack_endpoint: str | None = None,
    region: Region = (None, None),
) -> FreeAttachmentSpec:
    names = (prefix,) if count == 1 else tuple(f"{prefix}{i}" for i in range(1, count + 1))
    return FreeAttachmentSpec(tuple(target), names, constraint, stack_endpoint, region)


@dataclass(frozen=True)
class Scaffold:
    fixed_vertices: tuple[str, ...]
    fixed_edges: tuple[tuple[str, str, PageKind], ...]
    free_specs: tuple[FreeAttachmentSpec, ...] = ()

    def with_free(self, *specs: FreeAttachmentSpec) -> "Scaffold":
        return replace(self, free_specs=self.free_specs + specs)

    def renamed(self, mapping: Mapping[str, str]) -> "Scaffold":
        r = lambda x: None if x is None else mapping.get(x, x)  # noqa: E731
        return Scaffold(
            tuple(r(v) for v in self.fixed_vertices),
            tuple((r(a), r(b), k) for a, b, k in self.fixed_edges),
            tuple(
                FreeAttachmentSpec(
                    (r(s.target_edge[0]), r(s.target_edge[1])),
                    tuple(r(n) for n in s.names),
                    s.constraint,
                    r(s.stack_endpoint),
                    (r(s.region[0]), r(s.region[1])),
                )
                for s in self.free_specs
            ),
        )

    def mirrored(self, mapping: Mapping[str, str] | None = None) -> "Scaffold":
        """The same configuration read right to left, then renamed by ``mapping``."""
        flipped = Scaffold(
            self.fixed_vertices[::-1],
            self.fixed_edges,
            tuple(replace(s, region=(s.region[1], s.region[0])) for s in self.free_specs),
        )
        return flipped.renamed(mapping or {})

    @property
    def all_names(self) -> tuple[str, ...]:
        return self.fixed_vertices + tuple(n for s in self.free_specs for n in s.names)


@dataclass(frozen=True)
class PlacementOutcome:
    """One leaf of the placement search.

    ``order`` lists the vertices placed so far; a refuted outcome may stop
    before all free vertices are placed (``pending`` counts the rest, each
    of whose placements it refutes at once).
    """

    scope: str
    order: tuple[str, ...]
    free_pages: tuple[tuple[str, str, PageKind], ...]
    witness: Witness | None
    witness_text: str = ""
    pending: int = 0

    @property
    def refuted(self) -> bool:
        return self.witness is not None

    def to_text(self) -> str:
        pages = " ".join(f"({a},{b}){k.value}" for a, b, k in self.free_pages) or "-"
        head = f"{self.scope + ' ' if self.scope else ''}order {'<'.join(self.order)} pages {pages}"
        if self.witness is None:
            return f"{head} outcome extension"
        return f"{head} outcome refuted witness {self.witness_text}"


class Verdict(str, enum.Enum):
    CERTIFIED = "Certified"
    REFUTABLE = "Refutable"


@dataclass(frozen=True)
class StepReport:
    outcomes: tuple[PlacementOutcome, ...]
    notes: tuple[str, ...] = ()

    @property
    def placements_total(self) -> int:
        return len(self.outcomes)

    @property
    def verdict(self) -> Verdict:
        if any(not o.refuted for o in self.outcomes):
            return Verdict.REFUTABLE
        return Verdict.CERTIFIED

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED

    def extensions(self) -> list[PlacementOutcome]:
        return [o for o in self.outcomes if not o.refuted]

    def histogram(self) -> Counter:
        return Counter(o.witness.kind.value for o in self.outcomes if o.witness is not None)

    def witnesses(self) -> list[Witness]:
        return [o.witness for o in self.outcomes if o.witness is not None]

    def to_text(self) -> str:
        hist = " ".join(f"{k}={v}" for k, v in sorted(self.histogram().items())) or "-"
        lines = [f"verdict {self.verdict.value} placements={self.placements_total} witnesses {hist}"]
        lines += [f"# {n}" for n in self.notes]
        lines += [o.to_text() for o in self.outcomes]
        return "\n".join(lines)

    @staticmethod
    def merge(parts: list["StepReport"], notes: tuple[str, ...] = ()) -> "StepReport":
        return StepReport(
            tuple(o for p in parts for o in p.outcomes),
            notes + tuple(n for p in parts for n in p.notes),
        )


@dataclass
class _FreeVertex:
    name: str
    vid: int
    target: tuple[int, int]
    options: list[tuple[PageKind, PageKind]]
    region: tuple[int | None, int | None]
    after_sibling: int | None  # symmetry breaking: must sit right of this vertex


def _compile(scaffold: Scaffold) -> tuple[dict[str, int], list[_FreeVertex]]:
    names = scaffold.all_names
    if len(set(names)) != len(names):
        dup = sorted({n for n in names if names.count(n) > 1})
        raise ScaffoldError(f"duplicate vertex names {dup}")
    if len(names) > MAX_VERTICES:
        raise ScaffoldError(f"{len(names)} vertices exceed the limit of {MAX_VERTICES}")
    vid = {n: i for i, n in enumerate(names)}
    fixed = set(scaffold.fixed_vertices)
    seen_edges: set[frozenset[str]] = set()
    for a, b, kind in scaffold.fixed_edges:
        if a not in fixed or b not in fixed or a == b:
            raise ScaffoldError(f"fixed edge ({a},{b}) must join two distinct fixed vertices")
        if frozenset((a, b)) in seen_edges:
            raise ScaffoldError(f"fixed edge ({a},{b}) given twice")
        seen_edges.add(frozenset((a, b)))
        if not isinstance(kind, PageKind):
            raise ScaffoldError(f"fixed edge ({a},{b}) has no page kind")

    # names referenced by later specs must keep their identity (no symmetry breaking)
    referenced: set[str] = set()
    for s in scaffold.free_specs:
        referenced.update(s.target_edge)
        referenced.update(x for x in s.region if x is not None)

    declared = set(fixed)
    out: list[_FreeVertex] = []
    for s in scaffold.free_specs:
        if not 1 <= s.count <= MAX_PER_SPEC:
            raise ScaffoldError(f"free spec on {s.target_edge} has {s.count} vertices; allowed 1..{MAX_PER_SPEC}")
        a, b = s.target_edge
        if a not in declared or b not in declared:
            raise ScaffoldError(f"target edge ({a},{b}) uses a vertex not declared before it")
        if frozenset((a, b)) not in seen_edges:
            raise ScaffoldError(f"target ({a},{b}) is not a fixed or previously attached edge")
        if s.constraint is AttachmentConstraint.MIXED and s.stack_endpoint not in (None, a, b):
            raise ScaffoldError(f"stack endpoint {s.stack_endpoint} is not on ({a},{b})")
        for r in s.region:
            if r is not None and r not in declared:
                raise ScaffoldError(f"region bound {r} is not declared before the attachment")
        interchangeable = not (set(s.names) & referenced)
        prev = None
        for n in s.names:
            out.append(
                _FreeVertex(
                    n,
                    vid[n],
                    (vid[a], vid[b]),
                    s.page_options(),
                    tuple(None if r is None else vid[r] for r in s.region),
                    prev if interchangeable else None,
                )
            )
            prev = vid[n]
        for n in s.names:
            declared.add(n)
            seen_edges.add(frozenset((n, a)))
            seen_edges.add(frozenset((n, b)))
    return vid, out


def _pick(witnesses: list[Witness]) -> Witness | None:
    if not witnesses:
        return None
    rank = {k: i for i, k in enumerate(WITNESS_PRIORITY)}
    return min(witnesses, key=lambda w: (rank[w.kind], w))


def _structures(view: PagedOrder, vocabulary: Collection[WitnessKind], must_contain: int | None) -> list[Witness]:
    found = []
    for kind in STRUCTURE_KINDS:
        if kind in vocabulary:
            found += [w for w in find_structures(view, TEMPLATES[kind]) if must_contain is None or must_contain in w.vertices]
    return found


def _new_witness(
    view: PagedOrder, w: int, new_edges: list[tuple[tuple[int, int], PageId]], vocabulary: Collection[WitnessKind]
) -> Witness | None:
    found = []
    for e, page in new_edges:
        for f, other in view.pages.items():
            if other == page and w not in f:
                x = pair_witness(e, f, page, view.position)
                if x is not None and x.kind in vocabulary:
                    found.append(x)
    best = _pick(found)
    if best is not None:
        return best
    return _pick(_structures(view, vocabulary, w))


def certify_step(
    scaffold: Scaffold,
    vocabulary: Collection[WitnessKind | str] = BASIC_KINDS,
    scope: str = "",
) -> StepReport:
    """Try every placement of the free attachments of ``scaffold``.

    Crossing and Rainbow always refute; SmileyFace and the seven-vertex
    patterns refute only when listed in ``vocabulary``.
    """
    vocab = frozenset(WitnessKind(k) for k in vocabulary) | BASIC_KINDS
    vid, frees = _compile(scaffold)
    names = {i: n for n, i in vid.items()}
    order = [vid[n] for n in scaffold.fixed_vertices]
    pages: dict[tuple[int, int], PageId] = {}
    for a, b, kind in scaffold.fixed_edges:
        x, y = vid[a], vid[b]
        pages[(min(x, y), max(x, y))] = _PAGE[kind]

    base = PagedOrder({v: i for i, v in enumerate(order)}, pages)
    bad = _pick(basic_witnesses(base) + _structures(base, vocab, None))
    if bad is not None:
        raise ScaffoldError(f"fixed part already contains {bad.describe(names)}")

    outcomes: list[PlacementOutcome] = []
    free_pages: list[tuple[str, str, PageKind]] = []

    def record(witness: Witness | None, depth: int) -> None:
        outcomes.append(
            PlacementOutcome(
                scope,
                tuple(names[v] for v in order),
                tuple(free_pages),
                witness,
                "" if witness is None else witness.describe(names),
                len(frees) - depth,
            )
        )

    def slots(fv: _FreeVertex) -> range:
        lo, hi = 0, len(order)
        left, right = fv.region
        if left is not None:
            lo = max(lo, order.index(left) + 1)
        if right is not None:
            hi = min(hi, order.index(right))
        if fv.after_sibling is not None:
            lo = max(lo, order.index(fv.after_sibling) + 1)
        return range(lo, hi + 1)

    def extend(depth: int) -> None:
        if depth == len(frees):
            record(None, depth)
            return
        fv = frees[depth]
        w = fv.vid
        for slot in slots(fv):
            order.insert(slot, w)
            view_pos = {v: i for i, v in enumerate(order)}
            for kinds in fv.options:
                new_edges = []
                for t, kind in zip(fv.target, kinds):
                    e = (min(w, t), max(w, t))
                    pages[e] = _PAGE[kind]
                    new_edges.append((e, _PAGE[kind]))
                    free_pages.append((names[w], names[t], kind))
                witness = _new_witness(PagedOrder(view_pos, pages), w, new_edges, vocab)
                if witness is not None:
                    record(witness, depth + 1)
                else:
                    extend(depth + 1)
                for e, _ in new_edges:
                    del pages[e]
                del free_pages[-2:]
            order.pop(slot)

    extend(0)
    return StepReport(tuple(outcomes))

