"""Simple graphs, 2-tree construction, and the G(k, l) family.

Vertices are integers ``0..n-1``; an edge is a pair ``(u, v)`` with ``u < v``.
A :class:`TwoTree` keeps the full construction history so that generation
structure never has to be re-inferred from the bare graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Literal, Mapping

from .errors import GraphError, NotGklError, SizeCapExceeded, SizeOverflowError, UnknownEdgeError

Edge = tuple[int, int]

DEFAULT_VERTEX_CAP = 1_000_000


def norm_edge(u: int, v: int) -> Edge:
    """Return the edge ``{u, v}`` with the smaller endpoint first."""
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..vertex_count-1``.

    ``edges`` is stored normalized and sorted, so two graphs with the same
    edge set compare (and serialize) identically.
    """

    vertex_count: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be non-negative")
        seen: set[Edge] = set()
        for u, v in self.edges:
            e = norm_edge(u, v)
            if e[0] < 0 or e[1] >= self.vertex_count:
                raise GraphError(f"edge {e} has an endpoint outside 0..{self.vertex_count - 1}")
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertex_count: int | None = None) -> "Graph":
        edges = list(edges)
        if vertex_count is None:
            vertex_count = 1 + max((max(e) for e in edges), default=-1)
        return cls(vertex_count, tuple(edges))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and norm_edge(u, v) in self.edge_set

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced by ``vertices``; vertex ids are preserved."""
        keep = set(vertices)
        return Graph(self.vertex_count, tuple(e for e in self.edges if e[0] in keep and e[1] in keep))

    def __repr__(self) -> str:
        return f"Graph(n={self.vertex_count}, m={len(self.edges)})"


# --------------------------------------------------------------------------
# 2-trees
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AttachmentRecord:
    new_vertex: int
    parent_edge: Edge
    generation: int


@dataclass(frozen=True)
class GklParams:
    k: int
    ell: int

    def __post_init__(self) -> None:
        if self.k < 1 or self.ell < 1:
            raise ValueError(f"G(k, l) needs k >= 1 and l >= 1, got k={self.k}, l={self.ell}")


@dataclass(frozen=True)
class TwoTree:
    """A 2-tree together with its construction log.

    ``edge_order`` lists edges in creation order; ``vertex_generation`` is
    indexed by vertex id.  ``params`` is set when the tree is a G(k, l) build.
    """

    graph: Graph
    base_edge: Edge
    log: tuple[AttachmentRecord, ...]
    vertex_generation: tuple[int, ...]
    edge_generation: Mapping[Edge, int]
    edge_order: tuple[Edge, ...]
    params: GklParams | None = field(default=None, compare=False)

    @classmethod
    def single_edge(cls) -> "TwoTree":
        return _TreeBuilder().freeze()

    @cached_property
    def max_generation(self) -> int:
        return max(self.vertex_generation)

    @cached_property
    def _attachments(self) -> dict[Edge, tuple[AttachmentRecord, ...]]:
        index: dict[Edge, list[AttachmentRecord]] = {}
        for rec in self.log:
            index.setdefault(rec.parent_edge, []).append(rec)
        return {e: tuple(recs) for e, recs in index.items()}

    @cached_property
    def _parent_of(self) -> dict[int, Edge]:
        return {rec.new_vertex: rec.parent_edge for rec in self.log}

    def attachments(self, edge: tuple[int, int], generation: int | None = None) -> tuple[AttachmentRecord, ...]:
        """Attachment records whose parent is ``edge`` (optionally one generation only)."""
        recs = self._attachments.get(norm_edge(*edge), ())
        if generation is None:
            return recs
        return tuple(r for r in recs if r.generation == generation)

    def parent_edge(self, v: int) -> Edge:
        try:
            return self._parent_of[v]
        except KeyError:
            raise GraphError(f"vertex {v} is an endpoint of the base edge, not an attachment") from None

    def is_base_vertex(self, v: int) -> bool:
        return v in self.base_edge

    def attach(self, parent_edge: tuple[int, int], generation: int | None = None) -> "TwoTree":
        """Return a new tree with one more vertex attached to ``parent_edge``.

        The new vertex gets id ``vertex_count``.  ``generation`` defaults to
        one more than the parent edge's generation; G(k, l) builds pass the
        construction level explicitly because old edges receive attachments at
        every later level.
        """
        builder = _TreeBuilder.from_tree(self)
        builder.attach(parent_edge, generation)
        return builder.freeze()

    def replay(self) -> Graph:
        """Rebuild the graph from ``base_edge`` and ``log``."""
        builder = _TreeBuilder(self.base_edge)
        for rec in self.log:
            if rec.new_vertex != builder.vertex_count:
                raise GraphError(f"log out of creation order at vertex {rec.new_vertex}")
            builder.attach(rec.parent_edge, rec.generation)
        return builder.freeze().graph

    @classmethod
    def from_graph(cls, graph: Graph, edge_generation: Mapping[Edge, int] | None = None) -> "TwoTree":
        """Recover the construction log of a 2-tree numbered in creation order.

        Vertex ``v >= 2`` must have exactly two neighbors with smaller ids and
        they must be adjacent; that edge is its parent.  When generation labels
        are given they are checked against the replay; otherwise every
        attachment is one generation above its parent edge.
        """
        if graph.vertex_count < 2 or not graph.has_edge(0, 1):
            raise GraphError("a 2-tree in creation order starts with the edge (0, 1)")
        builder = _TreeBuilder((0, 1))
        if edge_generation is not None and edge_generation.get((0, 1), 1) != 1:
            raise GraphError("base edge must have generation 1")
        for v in range(2, graph.vertex_count):
            lower = sorted(w for w in graph.neighbors(v) if w < v)
            if len(lower) != 2 or not graph.has_edge(lower[0], lower[1]):
                raise GraphError(f"vertex {v} is not attached to an earlier edge")
            gen = None
            if edge_generation is not None:
                g1 = edge_generation.get((lower[0], v))
                g2 = edge_generation.get((lower[1], v))
                if g1 is None or g1 != g2:
                    raise GraphError(f"inconsistent generation labels on the edges of vertex {v}")
                gen = g1
            builder.attach((lower[0], lower[1]), gen)
        tree = builder.freeze()
        if tree.graph.edges != graph.edges:
            raise GraphError("graph has edges that no attachment explains")
        return tree


class _TreeBuilder:
    """Mutable accumulator behind :class:`TwoTree`; never escapes this module."""

    def __init__(self, base_edge: Edge = (0, 1)):
        base_edge = norm_edge(*base_edge)
        if base_edge != (0, 1):
            raise GraphError("base edge must be (0, 1)")
        self.vertex_count = 2
        self.base_edge = base_edge
        self.log: list[AttachmentRecord] = []
        self.vertex_generation = [1, 1]
        self.edge_generation: dict[Edge, int] = {base_edge: 1}
        self.edge_order: list[Edge] = [base_edge]

    @classmethod
    def from_tree(cls, tree: TwoTree) -> "_TreeBuilder":
        b = cls(tree.base_edge)
        b.vertex_count = tree.graph.vertex_count
        b.log = list(tree.log)
        b.vertex_generation = list(tree.vertex_generation)
        b.edge_generation = dict(tree.edge_generation)
        b.edge_order = list(tree.edge_order)
        return b

    def attach(self, parent_edge: tuple[int, int], generation: int | None = None) -> int:
        a, b = norm_edge(*parent_edge)
        parent_gen = self.edge_generation.get((a, b))
        if parent_gen is None:
            raise UnknownEdgeError(f"cannot attach to {(a, b)}: no such edge")
        if generation is None:
            generation = parent_gen + 1
        elif generation <= parent_gen:
            raise GraphError(f"generation {generation} must exceed the parent edge's generation {parent_gen}")
        x = self.vertex_count
        self.vertex_count += 1
        self.log.append(AttachmentRecord(x, (a, b), generation))
        self.vertex_generation.append(generation)
        for e in ((a, x), (b, x)):
            self.edge_generation[e] = generation
            self.edge_order.append(e)
        return x

    def freeze(self, params: GklParams | None = None) -> TwoTree:
        graph = Graph(self.vertex_count, tuple(self.edge_order))
        return TwoTree(
            graph=graph,
            base_edge=self.base_edge,
            log=tuple(self.log),
            vertex_generation=tuple(self.vertex_generation),
            edge_generation=dict(self.edge_generation),
            edge_order=tuple(self.edge_order),
            params=params,
        )


# --------------------------------------------------------------------------
# The G(k, l) family
# --------------------------------------------------------------------------


def gkl_size(params: GklParams, max_bits: int | None = 63) -> tuple[int, int]:
    """Vertex and edge counts of G(k, l) without building it.

    ``E = (2l + 1)^(k-1)`` and ``V = 2 + (E - 1) / 2``.  Python integers do
    not wrap; ``max_bits`` emulates a fixed signed width and raises instead of
    returning a value that would not fit (``None`` disables the check).
    """
    k, ell = params.k, params.ell
    edges = (2 * ell + 1) ** (k - 1)
    vertices = 2 + (edges - 1) // 2
    if max_bits is not None and max(edges, vertices) >= 1 << max_bits:
        raise SizeOverflowError(
            f"G({k},{ell}) has {edges} edges, which does not fit in a signed {max_bits + 1}-bit integer"
        )
    return vertices, edges


def build_gkl(params: GklParams, vertex_cap: int | None = DEFAULT_VERTEX_CAP) -> TwoTree:
    """Build G(k, l) deterministically.

    Vertices are numbered in creation order: the base edge is ``(0, 1)``;
    level ``g`` walks the edges of G(g-1, l) in their creation order and
    attaches ``l`` vertices to each.  Refuses (never truncates) when the
    vertex count would exceed ``vertex_cap``.
    """
    vertices, edges = gkl_size(params, max_bits=None)
    if vertex_cap is not None and vertices > vertex_cap:
        raise SizeCapExceeded(
            f"G({params.k},{params.ell}) has V={vertices} E={edges}, above the vertex cap {vertex_cap}",
            vertices=vertices,
            edges=edges,
        )
    builder = _TreeBuilder()
    for level in range(2, params.k + 1):
        for parent in list(builder.edge_order):
            for _ in range(params.ell):
                builder.attach(parent, level)
    return builder.freeze(params)


def recognize_gkl(tree: TwoTree) -> GklParams:
    """Return ``(k, l)`` if ``tree`` is exactly the canonical G(k, l) build."""
    if tree.params is not None:
        return tree.params
    k = tree.max_generation
    ell = max(1, len(tree.attachments(tree.base_edge, generation=2)))
    params = GklParams(k, ell)
    if gkl_size(params, max_bits=None) != (tree.graph.vertex_count, tree.graph.edge_count):
        raise NotGklError(f"tree is not a G(k, l) build (k={k}, l={ell} sizes do not match)")
    ref = build_gkl(params, vertex_cap=None)
    if ref.graph.edges != tree.graph.edges or ref.vertex_generation != tree.vertex_generation:
        raise NotGklError(f"tree has the sizes of G({k},{ell}) but not its structure")
    return params


def subgraph_by_generation(tree: TwoTree, g: int, mode: Literal["up_to", "exactly"] = "up_to") -> Graph:
    """Edge-induced subgraph of edges with generation ``<= g`` or ``== g``.

    Vertex ids are preserved; ``vertex_count`` is one more than the largest
    endpoint kept.
    """
    if not 1 <= g <= tree.max_generation:
        raise ValueError(f"generation {g} outside 1..{tree.max_generation}")
    if mode == "up_to":
        kept = [e for e in tree.edge_order if tree.edge_generation[e] <= g]
    elif mode == "exactly":
        kept = [e for e in tree.edge_order if tree.edge_generation[e] == g]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return Graph.from_edges(kept)


def vertices_up_to(tree: TwoTree, g: int) -> frozenset[int]:
    return frozenset(v for v, gen in enumerate(tree.vertex_generation) if gen <= g)


def edges_up_to(tree: TwoTree, g: int) -> list[Edge]:
    return [e for e in tree.edge_order if tree.edge_generation[e] <= g]
