"""Audit mixed layouts of G(k, l) against the structural lemmas.

Each auditor first checks the lemma's hypothesis (bounds on ``k`` and ``l``
and, unless disabled, validity of the layout as a 1-stack 1-queue layout).
When the hypothesis fails the report says so; a vacuous audit is never a
pass.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .graph import Edge, GklParams, TwoTree, edges_up_to, recognize_gkl, vertices_up_to
from .layout import MIXED, AttachmentClass, LinearLayout, PageSpec, check_structure, classify_attachment, is_valid
from .patterns import DEFAULT_VERTEX_BUDGET, Witness, WitnessKind, find_patterns, find_smileys


@dataclass(frozen=True)
class Counterexample:
    """A numeric violation: the offending edge and the vertices that make it fail."""

    kind: str
    edge: Edge
    vertices: tuple[int, ...]

    def describe(self) -> str:
        verts = ",".join(map(str, self.vertices))
        return f"{self.kind} <{verts}> edge=({self.edge[0]},{self.edge[1]})"


@dataclass(frozen=True)
class AuditReport:
    lemma_id: str
    hypothesis_met: bool
    violations: tuple[tuple[str, Witness | Counterexample], ...] = ()
    checked: int = 0
    note: str = ""

    def __post_init__(self) -> None:
        if not self.hypothesis_met and self.violations:
            raise ValueError("a vacuous audit cannot carry violations")

    @property
    def passed(self) -> bool:
        """True only for a non-vacuous audit with no violations."""
        return self.hypothesis_met and not self.violations

    def to_text(self) -> str:
        head = (
            f"lemma {self.lemma_id} hypothesis={'y' if self.hypothesis_met else 'n'} "
            f"violations={len(self.violations)} checked={self.checked}"
        )
        if self.note:
            head += f" # {self.note}"
        lines = [head]
        for statement, w in self.violations:
            lines.append(f"witness {w.describe()} # {statement}")
        return "\n".join(lines)


@dataclass
class _Gate:
    params: GklParams
    ok: bool
    note: str = ""


def _gate(
    tree: TwoTree,
    layout: LinearLayout,
    *,
    k_above: int,
    ell_above: int,
    check_validity: bool,
    spec: PageSpec = MIXED,
) -> _Gate:
    params = recognize_gkl(tree)
    if params.k <= k_above or params.ell <= ell_above:
        return _Gate(params, False, f"needs k>{k_above} and l>{ell_above}, got k={params.k} l={params.ell}")
    if check_validity:
        check_structure(tree.graph, layout, spec)
        if not is_valid(tree.graph, layout, spec):
            return _Gate(params, False, "layout is not a valid mixed layout")
    else:
        return _Gate(params, True, "validity not checked")
    return _Gate(params, True)


def _vacuous(lemma_id: str, gate: _Gate) -> AuditReport:
    return AuditReport(lemma_id, False, note=gate.note)


def class_counts(tree: TwoTree, layout: LinearLayout, attachments: Iterable) -> Counter:
    return Counter(classify_attachment(tree, layout, rec.new_vertex) for rec in attachments)


def _of_class(tree: TwoTree, layout: LinearLayout, attachments: Iterable, cls: AttachmentClass) -> list[int]:
    return [rec.new_vertex for rec in attachments if classify_attachment(tree, layout, rec.new_vertex) is cls]


def audit_lemma1(tree: TwoTree, layout: LinearLayout, *, check_validity: bool = True) -> AuditReport:
    """Every edge of G(k-1, l) has at most two stack-attachments among its generation-k attachments."""
    gate = _gate(tree, layout, k_above=1, ell_above=2, check_validity=check_validity)
    if not gate.ok:
        return _vacuous("1", gate)
    k = gate.params.k
    violations = []
    edges = edges_up_to(tree, k - 1)
    for e in edges:
        stacks = _of_class(tree, layout, tree.attachments(e, generation=k), AttachmentClass.STACK)
        if len(stacks) > 2:
            violations.append(
                (f"edge {e} has {len(stacks)} stack-attachments", Counterexample("StackAttachments", e, tuple(stacks)))
            )
    return AuditReport("1", True, tuple(violations), checked=len(edges), note=gate.note)


def audit_lemma2(
    tree: TwoTree, layout: LinearLayout, *, check_validity: bool = True, vertex_budget: int | None = DEFAULT_VERTEX_BUDGET
) -> AuditReport:
    """No smiley face is formed by vertices of G(k-1, l)."""
    gate = _gate(tree, layout, k_above=1, ell_above=2, check_validity=check_validity)
    if not gate.ok:
        return _vacuous("2", gate)
    scope = vertices_up_to(tree, gate.params.k - 1)
    found = find_smileys(tree.graph, layout, restrict_to=scope, vertex_budget=vertex_budget)
    violations = tuple(("smiley face among G(k-1) vertices", w) for w in found)
    return AuditReport("2", True, violations, checked=len(scope), note=gate.note)


def audit_lemma3(tree: TwoTree, layout: LinearLayout, *, check_validity: bool = True) -> AuditReport:
    """If an edge (u, v) of G(k-1, l) has three or more queue-attachments, all of them lie between u and v."""
    gate = _gate(tree, layout, k_above=1, ell_above=2, check_validity=check_validity)
    if not gate.ok:
        return _vacuous("3", gate)
    violations = []
    checked = 0
    pos = layout.position
    for e in edges_up_to(tree, gate.params.k - 1):
        queues = _of_class(tree, layout, tree.attachments(e), AttachmentClass.QUEUE)
        if len(queues) < 3:
            continue
        checked += 1
        lo, hi = sorted((pos[e[0]], pos[e[1]]))
        for x in queues:
            if not lo < pos[x] < hi:
                violations.append(
                    (
                        f"queue-attachment {x} of {e} lies outside the edge",
                        Counterexample("QueueOutside", e, (layout.order[lo], x, layout.order[hi])),
                    )
                )
    return AuditReport("3", True, tuple(violations), checked=checked, note=gate.note)


def _queue_edges(tree: TwoTree, layout: LinearLayout, g: int) -> list[Edge]:
    return [e for e in edges_up_to(tree, g) if not layout.pages[e].is_stack]


def audit_lemma4(tree: TwoTree, layout: LinearLayout, *, check_validity: bool = True) -> AuditReport:
    """Every queue-edge of G(k-3, l) has at most six queue-attachments of generation <= k-2."""
    gate = _gate(tree, layout, k_above=4, ell_above=6, check_validity=check_validity)
    if not gate.ok:
        return _vacuous("4", gate)
    k = gate.params.k
    violations = []
    edges = _queue_edges(tree, layout, k - 3)
    for e in edges:
        recs = [r for r in tree.attachments(e) if r.generation <= k - 2]
        queues = _of_class(tree, layout, recs, AttachmentClass.QUEUE)
        if len(queues) > 6:
            violations.append(
                (f"queue-edge {e} has {len(queues)} queue-attachments", Counterexample("QueueAttachments", e, tuple(queues)))
            )
    return AuditReport("4", True, tuple(violations), checked=len(edges), note=gate.note)


def audit_corollary1(tree: TwoTree, layout: LinearLayout, *, check_validity: bool = True) -> AuditReport:
    """Every queue-edge of G(k-4, l) has at least l-8 mixed-attachments among its generation k-3 attachments.

    Also checks that the stack, queue and mixed counts of that group add up to l.
    """
    gate = _gate(tree, layout, k_above=4, ell_above=8, check_validity=check_validity)
    if not gate.ok:
        return _vacuous("cor1", gate)
    k, ell = gate.params.k, gate.params.ell
    violations = []
    edges = _queue_edges(tree, layout, k - 4)
    for e in edges:
        recs = tree.attachments(e, generation=k - 3)
        counts = class_counts(tree, layout, recs)
        s, q, m = counts[AttachmentClass.STACK], counts[AttachmentClass.QUEUE], counts[AttachmentClass.MIXED]
        if s + q + m != ell:
            violations.append(
                (f"edge {e}: {s}+{q}+{m} attachments, expected {ell}", Counterexample("Partition", e, (s, q, m)))
            )
        if m < ell - 8:
            violations.append(
                (f"queue-edge {e} has {m} mixed-attachments, fewer than l-8={ell - 8}", Counterexample("MixedCount", e, (s, q, m)))
            )
    return AuditReport("cor1", True, tuple(violations), checked=len(edges), note=gate.note)


def audit_lemma5(
    tree: TwoTree, layout: LinearLayout, *, check_validity: bool = True, vertex_budget: int | None = DEFAULT_VERTEX_BUDGET
) -> AuditReport:
    """G(k-1, l) contains none of the patterns P1, P1a, P2."""
    gate = _gate(tree, layout, k_above=1, ell_above=4, check_validity=check_validity)
    if not gate.ok:
        return _vacuous("5", gate)
    scope = vertices_up_to(tree, gate.params.k - 1)
    violations = []
    for kind in (WitnessKind.P1, WitnessKind.P1A, WitnessKind.P2):
        for w in find_patterns(tree.graph, layout, kind, restrict_to=scope, vertex_budget=vertex_budget):
            violations.append((f"pattern {kind.value} among G(k-1) vertices", w))
    return AuditReport("5", True, tuple(violations), checked=len(scope), note=gate.note)


AUDITORS: dict[str, Callable[..., AuditReport]] = {
    "1": audit_lemma1,
    "2": audit_lemma2,
    "3": audit_lemma3,
    "4": audit_lemma4,
    "cor1": audit_corollary1,
    "5": audit_lemma5,
}


def run_audits(
    tree: TwoTree, layout: LinearLayout, lemmas: Sequence[str], *, check_validity: bool = True
) -> list[AuditReport]:
    unknown = [x for x in lemmas if x not in AUDITORS]
    if unknown:
        raise ValueError(f"unknown lemma id(s) {unknown}; choose from {sorted(AUDITORS)}")
    return [AUDITORS[x](tree, layout, check_validity=check_validity) for x in lemmas]
