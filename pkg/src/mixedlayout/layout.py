"""Linear layouts: vertex orders, stack/queue pages, and their validity."""

from __future__ import annotations

import enum
import re
from bisect import bisect_left
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .errors import AdjacentEdgesError, GraphError, LayoutStructureError
from .graph import Edge, Graph, TwoTree, norm_edge


class PageKind(str, enum.Enum):
    STACK = "S"
    QUEUE = "Q"


_PAGE_RE = re.compile(r"^([SQ])(\d+)$")


@dataclass(frozen=True, order=True)
class PageId:
    kind: PageKind
    index: int = 0

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "PageId":
        m = _PAGE_RE.match(text)
        if not m:
            raise ValueError(f"bad page id {text!r}; expected S<i> or Q<i>")
        return cls(PageKind(m.group(1)), int(m.group(2)))

    @property
    def is_stack(self) -> bool:
        return self.kind is PageKind.STACK


S0 = PageId(PageKind.STACK, 0)
Q0 = PageId(PageKind.QUEUE, 0)


@dataclass(frozen=True)
class PageSpec:
    stacks: int
    queues: int

    def __post_init__(self) -> None:
        if self.stacks < 0 or self.queues < 0 or self.stacks + self.queues < 1:
            raise ValueError(f"need s, q >= 0 and s + q >= 1, got s={self.stacks} q={self.queues}")

    @property
    def pages(self) -> tuple[PageId, ...]:
        return tuple(PageId(PageKind.STACK, i) for i in range(self.stacks)) + tuple(
            PageId(PageKind.QUEUE, i) for i in range(self.queues)
        )

    def __contains__(self, page: object) -> bool:
        if not isinstance(page, PageId):
            return False
        limit = self.stacks if page.kind is PageKind.STACK else self.queues
        return 0 <= page.index < limit

    def __str__(self) -> str:
        return f"{self.stacks}-stack {self.queues}-queue"


MIXED = PageSpec(1, 1)


@dataclass(frozen=True)
class LinearLayout:
    """A vertex order plus a page for every edge.

    ``order[i]`` is the vertex at rank ``i``; ``position`` is its inverse.
    """

    order: tuple[int, ...]
    pages: Mapping[Edge, PageId] = field(default_factory=dict)

    def __post_init__(self) -> None:
        order = tuple(self.order)
        if sorted(order) != list(range(len(order))):
            raise LayoutStructureError("order must be a permutation of 0..n-1")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "pages", {norm_edge(*e): p for e, p in self.pages.items()})

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return tuple(pos)

    def precedes(self, u: int, v: int) -> bool:
        return self.position[u] < self.position[v]

    def page_of(self, u: int, v: int) -> PageId:
        return self.pages[norm_edge(u, v)]

    def edges_on(self, page: PageId) -> list[Edge]:
        return sorted(e for e, p in self.pages.items() if p == page)

    def reversed(self) -> "LinearLayout":
        return LinearLayout(self.order[::-1], self.pages)

    def oriented(self, e: Edge) -> tuple[int, int]:
        """``e`` with its left endpoint (under the order) first."""
        u, v = e
        return (u, v) if self.position[u] < self.position[v] else (v, u)


def _spans(e: Edge, f: Edge, position: Sequence[int] | Mapping[int, int]) -> tuple[int, int, int, int]:
    if len({e[0], e[1], f[0], f[1]}) < 4:
        raise AdjacentEdgesError(f"edges {e} and {f} share an endpoint")
    a, b = sorted((position[e[0]], position[e[1]]))
    c, d = sorted((position[f[0]], position[f[1]]))
    return a, b, c, d


def crosses(e: Edge, f: Edge, layout: LinearLayout) -> bool:
    """True iff the independent edges ``e`` and ``f`` interleave (form a 2-twist)."""
    a, b, c, d = _spans(e, f, layout.position)
    return a < c < b < d or c < a < d < b


def nests(e: Edge, f: Edge, layout: LinearLayout) -> bool:
    """True iff one of the independent edges strictly contains the other (a 2-rainbow)."""
    a, b, c, d = _spans(e, f, layout.position)
    return a < c < d < b or c < a < b < d


def conflict(kind: PageKind, l1: int, r1: int, l2: int, r2: int) -> bool:
    """Position-level conflict test for two edges on the same page.

    Spans are ``(l, r)`` with ``l < r``; shared endpoints never conflict.
    """
    if l1 == l2 or l1 == r2 or r1 == l2 or r1 == r2:
        return False
    if kind is PageKind.STACK:
        return l1 < l2 < r1 < r2 or l2 < l1 < r2 < r1
    return l1 < l2 < r2 < r1 or l2 < l1 < r1 < r2


@dataclass(frozen=True)
class Violation:
    kind: str  # "crossing" or "nesting"
    page: PageId
    first: Edge
    second: Edge

    def __str__(self) -> str:
        return f"{self.kind} {self.page} ({self.first[0]},{self.first[1]}) ({self.second[0]},{self.second[1]})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(str(v) for v in self.violations)


def check_structure(graph: Graph, layout: LinearLayout, spec: PageSpec) -> None:
    """Raise :class:`LayoutStructureError` unless ``layout`` covers ``graph`` within ``spec``."""
    if len(layout.order) != graph.vertex_count:
        raise LayoutStructureError(
            f"layout orders {len(layout.order)} vertices but the graph has {graph.vertex_count}"
        )
    missing = graph.edge_set - layout.pages.keys()
    if missing:
        raise LayoutStructureError(f"{len(missing)} edge(s) have no page, e.g. {min(missing)}")
    extra = layout.pages.keys() - graph.edge_set
    if extra:
        raise LayoutStructureError(f"layout assigns pages to non-edges, e.g. {min(extra)}")
    for e, p in layout.pages.items():
        if p not in spec:
            raise LayoutStructureError(f"edge {e} is on page {p}, outside the {spec} spec")


def _page_groups(layout: LinearLayout) -> dict[PageId, list[tuple[int, int, Edge]]]:
    pos = layout.position
    groups: dict[PageId, list[tuple[int, int, Edge]]] = {}
    for e, p in layout.pages.items():
        l, r = sorted((pos[e[0]], pos[e[1]]))
        groups.setdefault(p, []).append((l, r, e))
    for spans in groups.values():
        spans.sort()
    return groups


def _iter_violations(layout: LinearLayout) -> Iterator[Violation]:
    groups = _page_groups(layout)
    for page in sorted(groups):
        spans = groups[page]
        label = "crossing" if page.is_stack else "nesting"
        for i, (l1, r1, e) in enumerate(spans):
            for l2, r2, f in spans[i + 1 :]:
                if l2 >= r1:
                    break  # spans sorted by left end; later ones are disjoint from e
                if conflict(page.kind, l1, r1, l2, r2):
                    yield Violation(label, page, e, f)


def validate(graph: Graph, layout: LinearLayout, spec: PageSpec) -> ValidationReport:
    """Every same-page crossing (stack) or nesting (queue) pair of ``layout``."""
    check_structure(graph, layout, spec)
    return ValidationReport(tuple(_iter_violations(layout)))


def is_valid(graph: Graph, layout: LinearLayout, spec: PageSpec) -> bool:
    """Short-circuiting variant of :func:`validate` for inner loops."""
    check_structure(graph, layout, spec)
    return next(_iter_violations(layout), None) is None


def _longest_chain(spans: list[tuple[int, int]], increasing_right: bool) -> int:
    # spans sorted by left end; strict in both coordinates
    if increasing_right:
        keyed = sorted(spans, key=lambda s: (s[0], -s[1]))
        values = [r for _, r in keyed]
    else:
        keyed = sorted(spans, key=lambda s: (s[0], s[1]))
        values = [-r for _, r in keyed]
    tails: list[int] = []
    for x in values:
        i = bisect_left(tails, x)
        if i == len(tails):
            tails.append(x)
        else:
            tails[i] = x
    return len(tails)


def _max_chain(layout: LinearLayout, page: PageId, twist: bool) -> int:
    pos = layout.position
    spans = [tuple(sorted((pos[u], pos[v]))) for (u, v), p in layout.pages.items() if p == page]
    if not spans:
        return 0
    best = 1
    # a k-twist or k-rainbow has a common gap just right of its k-th left endpoint
    for gap in sorted({l for l, _ in spans}):
        inside = [s for s in spans if s[0] <= gap < s[1]]
        if len(inside) > best:
            best = max(best, _longest_chain(inside, increasing_right=twist))
    return best


def max_twist(layout: LinearLayout, page: PageId) -> int:
    """Size of the largest set of pairwise crossing edges on ``page``."""
    return _max_chain(layout, page, twist=True)


def max_rainbow(layout: LinearLayout, page: PageId) -> int:
    """Size of the largest set of pairwise nested edges on ``page``."""
    return _max_chain(layout, page, twist=False)


class AttachmentClass(str, enum.Enum):
    STACK = "stack"
    QUEUE = "queue"
    MIXED = "mixed"


def attachment_class(first: PageId, second: PageId) -> AttachmentClass:
    if first.is_stack and second.is_stack:
        return AttachmentClass.STACK
    if not first.is_stack and not second.is_stack:
        return AttachmentClass.QUEUE
    return AttachmentClass.MIXED


def classify_attachment(tree: TwoTree, layout: LinearLayout, v: int) -> AttachmentClass:
    """Stack-, queue-, or mixed-attachment, from the kinds of ``v``'s two parent edges."""
    if tree.is_base_vertex(v):
        raise GraphError(f"vertex {v} is a base-edge endpoint and has no parent edge")
    a, b = tree.parent_edge(v)
    return attachment_class(layout.page_of(a, v), layout.page_of(b, v))
