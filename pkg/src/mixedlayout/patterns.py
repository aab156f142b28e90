"""Forbidden structures in mixed layouts and the witnesses that exhibit them.

Structures are ordered templates: ``k`` slots that must appear left to right
(or, for the seven-vertex patterns, right to left as well) and a list of
slot pairs that must be stack- or queue-edges.  Matching is backtracking
over slots, seeded from page-kind adjacency, so only stack-edges are ever
tried for stack slots.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Collection, Iterable, Iterator, Mapping

from .errors import LayoutStructureError, SizeCapExceeded
from .graph import Edge, Graph, norm_edge
from .layout import LinearLayout, PageId, PageKind, conflict

DEFAULT_VERTEX_BUDGET = 64

S, Q = PageKind.STACK, PageKind.QUEUE


class WitnessKind(str, enum.Enum):
    CROSSING = "Crossing"
    RAINBOW = "Rainbow"
    TWIST = "Twist"
    SMILEY = "SmileyFace"
    P1 = "P1"
    P1A = "P1a"
    P2 = "P2"


BASIC_KINDS = frozenset({WitnessKind.CROSSING, WitnessKind.RAINBOW})
STRUCTURE_KINDS = (WitnessKind.SMILEY, WitnessKind.P1, WitnessKind.P1A, WitnessKind.P2)
ALL_KINDS = BASIC_KINDS | frozenset(STRUCTURE_KINDS)


@dataclass(frozen=True, order=True)
class Witness:
    """A concrete violation or forced structure.

    ``vertices`` lists the template slots in slot order (for a pattern matched
    right to left, ``vertices[0]`` is the rightmost vertex).  ``size`` is the
    ``k`` of a k-rainbow or k-twist and is 0 for the fixed-size structures.
    """

    kind: WitnessKind
    vertices: tuple[int, ...]
    edges: tuple[tuple[Edge, PageId], ...]
    size: int = 0

    @property
    def label(self) -> str:
        if self.kind is WitnessKind.RAINBOW or self.kind is WitnessKind.TWIST:
            return f"{self.kind.value}({self.size})"
        return self.kind.value

    def describe(self, names: Mapping[int, str] | None = None) -> str:
        name = (lambda v: names.get(v, str(v))) if names else str
        verts = ",".join(name(v) for v in self.vertices)
        edges = " ".join(f"({name(u)},{name(v)}){p}" for (u, v), p in self.edges)
        return f"{self.label} <{verts}> {edges}"

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class Template:
    kind: WitnessKind
    size: int
    edges: tuple[tuple[int, int, PageKind], ...]
    mirror_symmetric: bool = False


SMILEY = Template(WitnessKind.SMILEY, 6, ((0, 1, Q), (4, 5, Q), (0, 5, Q), (2, 3, S)), mirror_symmetric=True)
P1 = Template(WitnessKind.P1, 7, ((0, 2, S), (0, 5, S), (3, 4, S), (1, 6, Q)))
P1A = Template(WitnessKind.P1A, 7, ((1, 2, S), (1, 5, S), (3, 4, S), (0, 6, Q)))
P2 = Template(WitnessKind.P2, 7, ((0, 6, S), (1, 3, S), (1, 4, S), (0, 5, Q), (2, 6, Q)))

TEMPLATES = {t.kind: t for t in (SMILEY, P1, P1A, P2)}


class PagedOrder:
    """Order positions and paged edges over a vertex subset.

    The common input of every detector; built from a full layout or from a
    partial placement during certification.
    """

    def __init__(self, position: Mapping[int, int], pages: Mapping[Edge, PageId]):
        self.position = dict(position)
        self.pages = {e: p for e, p in pages.items() if e[0] in self.position and e[1] in self.position}
        self.adj: dict[PageKind, dict[int, set[int]]] = {S: {}, Q: {}}
        for (u, v), p in self.pages.items():
            self.adj[p.kind].setdefault(u, set()).add(v)
            self.adj[p.kind].setdefault(v, set()).add(u)

    @classmethod
    def from_layout(cls, layout: LinearLayout, restrict_to: Collection[int] | None = None) -> "PagedOrder":
        pos = layout.position
        keep = range(len(pos)) if restrict_to is None else restrict_to
        return cls({v: pos[v] for v in keep}, layout.pages)

    def kind_of(self, u: int, v: int) -> PageKind | None:
        p = self.pages.get(norm_edge(u, v))
        return None if p is None else p.kind


def _slot_order(template: Template) -> list[int]:
    # visit slots so that each one after the first is template-adjacent to an earlier one if possible
    nbrs: dict[int, set[int]] = {i: set() for i in range(template.size)}
    for i, j, _ in template.edges:
        nbrs[i].add(j)
        nbrs[j].add(i)
    order: list[int] = []
    remaining = set(range(template.size))
    while remaining:
        frontier = [i for i in remaining if nbrs[i] & set(order)]
        pick = min(frontier or remaining, key=lambda i: (-len(nbrs[i]), i))
        order.append(pick)
        remaining.discard(pick)
    return order


def match_template(template: Template, view: PagedOrder, reverse: bool = False) -> Iterator[tuple[int, ...]]:
    """Yield slot assignments of ``template`` in ``view``.

    With ``reverse`` the slots must appear right to left.
    """
    sign = -1 if reverse else 1
    pos = {v: sign * p for v, p in view.position.items()}
    slots = _slot_order(template)
    constraints: dict[int, list[tuple[int, PageKind]]] = {i: [] for i in range(template.size)}
    for i, j, kind in template.edges:
        constraints[i].append((j, kind))
        constraints[j].append((i, kind))
    everyone = sorted(pos, key=pos.__getitem__)
    assign: dict[int, int] = {}

    def candidates(slot: int) -> Iterable[int]:
        for other, kind in constraints[slot]:
            if other in assign:
                return view.adj[kind].get(assign[other], ())
        return everyone

    def consistent(slot: int, v: int) -> bool:
        pv = pos[v]
        for other, w in assign.items():
            if (other < slot) != (pos[w] < pv) or w == v:
                return False
        for other, kind in constraints[slot]:
            if other in assign and view.kind_of(v, assign[other]) is not kind:
                return False
        return True

    def extend(depth: int) -> Iterator[tuple[int, ...]]:
        if depth == len(slots):
            yield tuple(assign[i] for i in range(template.size))
            return
        slot = slots[depth]
        for v in candidates(slot):
            if v in pos and consistent(slot, v):
                assign[slot] = v
                yield from extend(depth + 1)
                del assign[slot]

    yield from extend(0)


def _witness(template: Template, verts: tuple[int, ...], view: PagedOrder) -> Witness:
    edges = tuple(
        (norm_edge(verts[i], verts[j]), view.pages[norm_edge(verts[i], verts[j])]) for i, j, _ in template.edges
    )
    return Witness(template.kind, verts, edges)


def find_structures(view: PagedOrder, template: Template) -> list[Witness]:
    found: set[Witness] = set()
    for reverse in (False, True):
        for verts in match_template(template, view, reverse):
            if template.mirror_symmetric and reverse:
                verts = verts[::-1]  # the mirror image is the same structure read left to right
            found.add(_witness(template, verts, view))
    return sorted(found)


def _guarded_view(layout: LinearLayout, restrict_to: Collection[int] | None, vertex_budget: int | None) -> PagedOrder:
    view = PagedOrder.from_layout(layout, restrict_to)
    if vertex_budget is not None and len(view.position) > vertex_budget:
        raise SizeCapExceeded(
            f"pattern scan over {len(view.position)} vertices exceeds the budget of {vertex_budget}",
            vertices=len(view.position),
        )
    return view


def _require_cover(graph: Graph, layout: LinearLayout) -> None:
    if len(layout.order) != graph.vertex_count or layout.pages.keys() != graph.edge_set:
        raise LayoutStructureError("layout does not cover the graph's vertices and edges exactly")


def find_smileys(
    graph: Graph,
    layout: LinearLayout,
    restrict_to: Collection[int] | None = None,
    vertex_budget: int | None = DEFAULT_VERTEX_BUDGET,
) -> list[Witness]:
    """All smiley faces ``<a,b,u,v,c,d>``, optionally among ``restrict_to`` only.

    ``layout`` must cover ``graph``; its page map is what the scan reads.
    """
    _require_cover(graph, layout)
    return find_structures(_guarded_view(layout, restrict_to, vertex_budget), SMILEY)


def find_patterns(
    graph: Graph,
    layout: LinearLayout,
    which: WitnessKind | str,
    restrict_to: Collection[int] | None = None,
    vertex_budget: int | None = DEFAULT_VERTEX_BUDGET,
) -> list[Witness]:
    """All occurrences of pattern P1, P1a or P2, in either orientation."""
    _require_cover(graph, layout)
    kind = WitnessKind(which)
    if kind not in (WitnessKind.P1, WitnessKind.P1A, WitnessKind.P2):
        raise ValueError(f"{kind.value} is not one of the seven-vertex patterns")
    return find_structures(_guarded_view(layout, restrict_to, vertex_budget), TEMPLATES[kind])


def pair_witness(e: Edge, f: Edge, page: PageId, position: Mapping[int, int]) -> Witness | None:
    """Crossing (stack) or 2-rainbow (queue) witness for two edges on ``page``, if any."""
    l1, r1 = sorted((position[e[0]], position[e[1]]))
    l2, r2 = sorted((position[f[0]], position[f[1]]))
    if not conflict(page.kind, l1, r1, l2, r2):
        return None
    by_pos = {position[v]: v for v in (*e, *f)}
    verts = tuple(by_pos[p] for p in sorted(by_pos))
    outer, inner = (e, f) if l1 < l2 else (f, e)
    if page.is_stack:
        return Witness(WitnessKind.CROSSING, verts, ((outer, page), (inner, page)), size=2)
    a, b, c, d = verts
    return Witness(WitnessKind.RAINBOW, (a, b, c, d), ((outer, page), (inner, page)), size=2)


def basic_witnesses(view: PagedOrder) -> list[Witness]:
    """Every same-page crossing or nesting pair in ``view``, as witnesses."""
    by_page: dict[PageId, list[Edge]] = {}
    for e, p in view.pages.items():
        by_page.setdefault(p, []).append(e)
    out = []
    for page, edges in by_page.items():
        edges.sort()
        for i, e in enumerate(edges):
            for f in edges[i + 1 :]:
                w = pair_witness(e, f, page, view.position)
                if w is not None:
                    out.append(w)
    return sorted(out)


def revalidate(witness: Witness, view: PagedOrder) -> bool:
    """Check that ``witness`` really holds in ``view`` (detector soundness)."""
    for e, page in witness.edges:
        if view.pages.get(e) != page:
            return False
    if witness.kind in (WitnessKind.CROSSING, WitnessKind.RAINBOW):
        (e, page), (f, _) = witness.edges
        return pair_witness(e, f, page, view.position) is not None
    template = TEMPLATES[witness.kind]
    ranks = [view.position[v] for v in witness.vertices]
    increasing = all(a < b for a, b in zip(ranks, ranks[1:]))
    decreasing = all(a > b for a, b in zip(ranks, ranks[1:]))
    if not (increasing or decreasing):
        return False
    return all(
        view.kind_of(witness.vertices[i], witness.vertices[j]) is kind for i, j, kind in template.edges
    )
