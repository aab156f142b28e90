"""Small named graphs used to cross-check the decision procedures."""

from __future__ import annotations

from itertools import combinations, permutations

from .graph import Graph, TwoTree


def path(n: int) -> Graph:
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)], vertex_count=n)


def cycle(n: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)], vertex_count=n)


def complete(n: int) -> Graph:
    return Graph.from_edges(combinations(range(n), 2), vertex_count=n)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges([(i, a + j) for i in range(a) for j in range(b)], vertex_count=a + b)


def k5_minus_edge() -> Graph:
    """K5 without the edge between its first two vertices."""
    return Graph.from_edges([e for e in combinations(range(5), 2) if e != (0, 1)], vertex_count=5)


def _canonical(graph: Graph) -> tuple:
    n = graph.vertex_count
    return min(
        tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in graph.edges)) for p in permutations(range(n))
    )


def two_trees(max_vertices: int) -> list[Graph]:
    """All 2-trees with 2..``max_vertices`` vertices, one per isomorphism class."""
    out: list[Graph] = []
    level = [TwoTree.single_edge()]
    seen: set[tuple] = set()
    while level:
        nxt = []
        for tree in level:
            key = (tree.graph.vertex_count, _canonical(tree.graph))
            if key in seen:
                continue
            seen.add(key)
            out.append(tree.graph)
            if tree.graph.vertex_count < max_vertices:
                nxt += [tree.attach(e) for e in tree.graph.edges]
        level = nxt
    return out


def small_corpus(max_vertices: int = 6) -> dict[str, Graph]:
    """Paths, cycles, K2,3, K5 minus an edge and every 2-tree up to ``max_vertices``."""
    graphs: dict[str, Graph] = {}
    for n in range(2, max_vertices + 1):
        graphs[f"path{n}"] = path(n)
    for n in range(3, max_vertices + 1):
        graphs[f"cycle{n}"] = cycle(n)
    graphs["k2_3"] = complete_bipartite(2, 3)
    graphs["k5_minus_e"] = k5_minus_edge()
    for i, g in enumerate(two_trees(max_vertices)):
        graphs[f"twotree{g.vertex_count}_{i}"] = g
    return graphs
