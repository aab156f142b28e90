"""Readers and writers for the ``.lg`` graph and ``.ll`` layout text formats.

.lg::

    laygraph 1
    n <vertex_count>
    e <u> <v> [g=<generation>]

.ll::

    laylayout 1
    order <v0> <v1> ...
    page <u> <v> <S0|Q0|...>

Both are UTF-8 with LF line endings; ``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator, Mapping

from .errors import FormatError, GraphError, LayoutStructureError
from .graph import Edge, Graph, TwoTree, norm_edge
from .layout import LinearLayout, PageId


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"expected integer {what}, got {token!r}", lineno) from None
    if value < 0:
        raise FormatError(f"{what} must be non-negative, got {value}", lineno)
    return value


def write_lg(graph: Graph, edge_generation: Mapping[Edge, int] | None = None) -> str:
    out = ["laygraph 1", f"n {graph.vertex_count}"]
    for u, v in graph.edges:
        if edge_generation is not None:
            out.append(f"e {u} {v} g={edge_generation[(u, v)]}")
        else:
            out.append(f"e {u} {v}")
    return "\n".join(out) + "\n"


def write_tree_lg(tree: TwoTree) -> str:
    return write_lg(tree.graph, tree.edge_generation)


def parse_lg(text: str) -> tuple[Graph, dict[Edge, int] | None]:
    """Parse ``.lg`` text; generations are returned only if every edge has one."""
    lines = _lines(text)
    lineno, header = next(lines, (1, []))
    if header != ["laygraph", "1"]:
        raise FormatError("expected header 'laygraph 1'", lineno)
    lineno, nline = next(lines, (lineno + 1, []))
    if len(nline) != 2 or nline[0] != "n":
        raise FormatError("expected 'n <vertex_count>'", lineno)
    n = _int(nline[1], lineno, "vertex count")
    edges: list[Edge] = []
    gens: dict[Edge, int] = {}
    seen: set[Edge] = set()
    for lineno, toks in lines:
        if toks[0] != "e" or len(toks) not in (3, 4):
            raise FormatError(f"expected 'e <u> <v> [g=<gen>]', got {' '.join(toks)!r}", lineno)
        u = _int(toks[1], lineno, "endpoint")
        v = _int(toks[2], lineno, "endpoint")
        if u >= v:
            raise FormatError(f"edge endpoints must satisfy u < v, got {u} {v}", lineno)
        if v >= n:
            raise FormatError(f"endpoint {v} is not below n={n}", lineno)
        if (u, v) in seen:
            raise FormatError(f"duplicate edge {u} {v}", lineno)
        seen.add((u, v))
        edges.append((u, v))
        if len(toks) == 4:
            if not toks[3].startswith("g="):
                raise FormatError(f"expected g=<generation>, got {toks[3]!r}", lineno)
            g = _int(toks[3][2:], lineno, "generation")
            if g < 1:
                raise FormatError("generation must be positive", lineno)
            gens[(u, v)] = g
    graph = Graph(n, tuple(edges))
    if gens and len(gens) != len(edges):
        raise FormatError("generation labels must be given for all edges or none")
    return graph, (gens or None)


def parse_lg_tree(text: str) -> TwoTree:
    graph, gens = parse_lg(text)
    try:
        return TwoTree.from_graph(graph, gens)
    except GraphError as exc:
        raise FormatError(f"not a 2-tree in creation order: {exc}") from None


def write_ll(layout: LinearLayout) -> str:
    out = ["laylayout 1", "order " + " ".join(str(v) for v in layout.order)]
    for (u, v) in sorted(layout.pages):
        out.append(f"page {u} {v} {layout.pages[(u, v)]}")
    return "\n".join(out) + "\n"


def parse_ll(text: str) -> LinearLayout:
    lines = _lines(text)
    lineno, header = next(lines, (1, []))
    if header != ["laylayout", "1"]:
        raise FormatError("expected header 'laylayout 1'", lineno)
    lineno, oline = next(lines, (lineno + 1, []))
    if not oline or oline[0] != "order":
        raise FormatError("expected 'order <v0> <v1> ...'", lineno)
    order = tuple(_int(t, lineno, "vertex") for t in oline[1:])
    pages: dict[Edge, PageId] = {}
    for lineno, toks in lines:
        if toks[0] != "page" or len(toks) != 4:
            raise FormatError(f"expected 'page <u> <v> <P>', got {' '.join(toks)!r}", lineno)
        u = _int(toks[1], lineno, "endpoint")
        v = _int(toks[2], lineno, "endpoint")
        if u >= v:
            raise FormatError(f"edge endpoints must satisfy u < v, got {u} {v}", lineno)
        try:
            page = PageId.parse(toks[3])
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
        if (u, v) in pages:
            raise FormatError(f"edge {u} {v} assigned twice", lineno)
        pages[norm_edge(u, v)] = page
    try:
        return LinearLayout(order, pages)
    except LayoutStructureError as exc:
        raise FormatError(str(exc)) from None


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read: {exc.strerror}", path=str(path)) from None
