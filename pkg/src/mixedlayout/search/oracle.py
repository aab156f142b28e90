"""Brute-force ground truth: every valid layout of a small graph.

Deliberately naive.  Orders are all permutations; for each order the page
assignments are all ``2^m`` bit masks, filtered with numpy.  It shares no
search code with :mod:`.solver` so the two can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator

import numpy as np

from ..errors import SizeCapExceeded
from ..graph import Graph
from ..layout import LinearLayout, PageSpec

DEFAULT_VERTEX_CAP = 7


@dataclass(frozen=True)
class OracleCount:
    orders_examined: int
    layouts: int


def _interleave(a: int, b: int, c: int, d: int) -> tuple[bool, bool]:
    """(crossing, nesting) for spans a<b and c<d over four distinct positions."""
    if a > c:
        a, b, c, d = c, d, a, b
    return (c < b < d, d < b)


def _check_args(graph: Graph, spec: PageSpec, vertex_cap: int) -> None:
    if graph.vertex_count > vertex_cap:
        raise SizeCapExceeded(
            f"oracle refuses {graph.vertex_count} vertices (cap {vertex_cap})", vertices=graph.vertex_count
        )
    if spec.stacks + spec.queues > 2:
        raise ValueError("the oracle handles at most two pages (s + q <= 2)")


def _valid_masks(graph: Graph, spec: PageSpec, order: tuple[int, ...]) -> np.ndarray:
    pos = [0] * graph.vertex_count
    for i, v in enumerate(order):
        pos[v] = i
    edges = graph.edges
    m = len(edges)
    npages = spec.stacks + spec.queues
    masks = np.arange(1 << m if npages == 2 else 1, dtype=np.int64)
    ok = np.ones(masks.shape, dtype=bool)
    stack_bit = [b for b in range(npages) if b < spec.stacks]
    queue_bit = [b for b in range(npages) if b >= spec.stacks]
    for (i, e), (j, f) in combinations(enumerate(edges), 2):
        if len({*e, *f}) < 4:
            continue
        a, b = sorted((pos[e[0]], pos[e[1]]))
        c, d = sorted((pos[f[0]], pos[f[1]]))
        cross, nest = _interleave(a, b, c, d)
        bad_bits = stack_bit if cross else queue_bit if nest else []
        if not bad_bits:
            continue
        bi = (masks >> i) & 1
        bj = (masks >> j) & 1
        for bit in bad_bits:
            ok &= ~((bi == bit) & (bj == bit))
    return masks[ok]


def _orders(n: int, canonical: bool) -> Iterator[tuple[int, ...]]:
    for order in permutations(range(n)):
        # one representative per reversal pair: first vertex id below last vertex id
        if canonical and n >= 2 and order[0] > order[-1]:
            continue
        yield order


def enumerate_all(
    graph: Graph, spec: PageSpec, vertex_cap: int = DEFAULT_VERTEX_CAP, canonical: bool = True
) -> Iterator[LinearLayout]:
    """Yield every valid ``spec`` layout of ``graph`` exactly once.

    With ``canonical`` (the default) only one layout of each reversal pair is
    produced, since reversing the order preserves validity.
    """
    _check_args(graph, spec, vertex_cap)
    pages = spec.pages
    for order in _orders(graph.vertex_count, canonical):
        for mask in _valid_masks(graph, spec, order).tolist():
            yield LinearLayout(order, {e: pages[(mask >> i) & 1] for i, e in enumerate(graph.edges)})


def count_all(graph: Graph, spec: PageSpec, vertex_cap: int = DEFAULT_VERTEX_CAP, canonical: bool = True) -> OracleCount:
    _check_args(graph, spec, vertex_cap)
    orders = layouts = 0
    for order in _orders(graph.vertex_count, canonical):
        orders += 1
        layouts += len(_valid_masks(graph, spec, order))
    return OracleCount(orders, layouts)


def first_layout(graph: Graph, spec: PageSpec, vertex_cap: int = DEFAULT_VERTEX_CAP) -> LinearLayout | None:
    return next(enumerate_all(graph, spec, vertex_cap), None)
