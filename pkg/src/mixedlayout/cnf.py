"""CNF encoding of layout existence, DIMACS I/O, and model decoding.

Variables: ``order(u, v)`` for ``u < v`` (true iff ``u`` precedes ``v``) and
one ``page(e, P)`` per edge and page.  No auxiliary variables are used: each
forbidden relative order of two same-page edges becomes one clause.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cmp_to_key
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .errors import EncodingConsistencyError, FormatError
from .graph import Edge, Graph
from .layout import LinearLayout, PageId, PageKind, PageSpec, validate


@dataclass(frozen=True)
class OrderVar:
    u: int
    v: int

    def __str__(self) -> str:
        return f"order {self.u} {self.v}"


@dataclass(frozen=True)
class PageVar:
    edge: Edge
    page: PageId

    def __str__(self) -> str:
        return f"page {self.edge[0]} {self.edge[1]} {self.page}"


Meaning = OrderVar | PageVar


@dataclass
class Cnf:
    variable_count: int = 0
    clauses: list[list[int]] = field(default_factory=list)
    variable_map: dict[int, Meaning] = field(default_factory=dict)

    def new_var(self, meaning: Meaning) -> int:
        self.variable_count += 1
        self.variable_map[self.variable_count] = meaning
        return self.variable_count

    def to_dimacs(self) -> str:
        out = [f"c var {i} = {m}" for i, m in sorted(self.variable_map.items())]
        out.append(f"p cnf {self.variable_count} {len(self.clauses)}")
        out += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(out) + "\n"


class _Vars:
    def __init__(self, cnf: Cnf, graph: Graph, spec: PageSpec):
        self.order = {}
        for u, v in combinations(range(graph.vertex_count), 2):
            self.order[(u, v)] = cnf.new_var(OrderVar(u, v))
        self.page = {}
        for e in graph.edges:
            for p in spec.pages:
                self.page[(e, p)] = cnf.new_var(PageVar(e, p))

    def before(self, a: int, b: int) -> int:
        """Literal for ``a`` precedes ``b``."""
        return self.order[(a, b)] if a < b else -self.order[(b, a)]


def _conflicting_orders(kind: PageKind) -> list[tuple[int, int, int, int]]:
    """Slot orders of ``(a, b, c, d)`` (edges ``(a, b)`` and ``(c, d)``) that conflict on ``kind``."""
    out = []
    for perm in permutations(range(4)):
        rank = {slot: i for i, slot in enumerate(perm)}
        l1, r1 = sorted((rank[0], rank[1]))
        l2, r2 = sorted((rank[2], rank[3]))
        if kind is PageKind.STACK:
            bad = l1 < l2 < r1 < r2 or l2 < l1 < r2 < r1
        else:
            bad = l1 < l2 < r2 < r1 or l2 < l1 < r1 < r2
        if bad:
            out.append(perm)
    return out


_CONFLICTS = {k: _conflicting_orders(k) for k in PageKind}


def encode(graph: Graph, spec: PageSpec) -> Cnf:
    cnf = Cnf()
    var = _Vars(cnf, graph, spec)
    clauses: list[list[int]] = []
    # transitivity: no directed 3-cycle in either direction
    for a, b, c in combinations(range(graph.vertex_count), 3):
        clauses.append([-var.before(a, b), -var.before(b, c), var.before(a, c)])
        clauses.append([var.before(a, b), var.before(b, c), -var.before(a, c)])
    # exactly one page per edge
    for e in graph.edges:
        lits = [var.page[(e, p)] for p in spec.pages]
        clauses.append(lits)
        clauses += [[-x, -y] for x, y in combinations(lits, 2)]
    # forbidden same-page pairs
    for e, f in combinations(graph.edges, 2):
        if set(e) & set(f):
            continue
        slots = (e[0], e[1], f[0], f[1])
        for p in spec.pages:
            both = [-var.page[(e, p)], -var.page[(f, p)]]
            for perm in _CONFLICTS[p.kind]:
                chain = [slots[i] for i in perm]
                clauses.append(both + [-var.before(x, y) for x, y in zip(chain, chain[1:])])
    cnf.clauses = sorted(sorted(c, key=abs) for c in clauses)
    return cnf


_COMMENT_RE = re.compile(r"^c var (\d+) = (order (\d+) (\d+)|page (\d+) (\d+) ([SQ]\d+))$")


def parse_dimacs(text: str) -> Cnf:
    """Parse DIMACS text written by :meth:`Cnf.to_dimacs`, including the variable map."""
    cnf = Cnf()
    header = None
    current: list[int] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            m = _COMMENT_RE.match(line)
            if m:
                vid = int(m.group(1))
                if m.group(3) is not None:
                    cnf.variable_map[vid] = OrderVar(int(m.group(3)), int(m.group(4)))
                else:
                    edge = (int(m.group(5)), int(m.group(6)))
                    cnf.variable_map[vid] = PageVar(edge, PageId.parse(m.group(7)))
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError("expected 'p cnf <vars> <clauses>'", lineno)
            header = (int(parts[2]), int(parts[3]))
            cnf.variable_count = header[0]
            continue
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                cnf.clauses.append(current)
                current = []
            else:
                current.append(lit)
    if header is None:
        raise FormatError("missing 'p cnf' header")
    if current:
        cnf.clauses.append(current)
    if len(cnf.clauses) != header[1]:
        raise FormatError(f"header announces {header[1]} clauses, found {len(cnf.clauses)}")
    return cnf


def parse_model(text: str) -> list[int]:
    """Literals from solver output (``v`` lines) or a bare literal list; ``s``/``c`` lines are skipped."""
    lits: list[int] = []
    has_v = any(line.lstrip().startswith("v") for line in text.split("\n"))
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line[0] in "cs":
            continue
        if has_v:
            if not line.startswith("v"):
                continue
            line = line[1:]
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"bad literal {tok!r}", lineno) from None
            if lit:
                lits.append(lit)
    return lits


def decode(graph: Graph, spec: PageSpec, model: Iterable[int]) -> LinearLayout:
    """Turn a satisfying assignment of :func:`encode` into a validated layout."""
    cnf = Cnf()
    var = _Vars(cnf, graph, spec)
    value: dict[int, bool] = {}
    for lit in model:
        value[abs(lit)] = lit > 0
    missing = [i for i in range(1, cnf.variable_count + 1) if i not in value]
    if missing:
        raise EncodingConsistencyError(f"model leaves {len(missing)} variable(s) unassigned, e.g. {missing[0]}")

    def cmp(a: int, b: int) -> int:
        lit = var.before(a, b)
        return -1 if value[abs(lit)] == (lit > 0) else 1

    order = sorted(range(graph.vertex_count), key=cmp_to_key(cmp))
    for i, a in enumerate(order):
        for b in order[i + 1 :]:
            if cmp(a, b) > 0:
                raise EncodingConsistencyError(f"order relation is not transitive around {a} and {b}")
    pages: dict[Edge, PageId] = {}
    for e in graph.edges:
        chosen = [p for p in spec.pages if value[var.page[(e, p)]]]
        if len(chosen) != 1:
            raise EncodingConsistencyError(f"edge {e} has {len(chosen)} pages set in the model")
        pages[e] = chosen[0]
    layout = LinearLayout(tuple(order), pages)
    report = validate(graph, layout, spec)
    if not report.ok:
        raise EncodingConsistencyError(f"decoded layout is invalid: {report.violations[0]}")
    return layout


def model_of(graph: Graph, spec: PageSpec, layout: LinearLayout) -> list[int]:
    """The assignment that :func:`encode` variables take under ``layout``."""
    cnf = Cnf()
    var = _Vars(cnf, graph, spec)
    pos = layout.position
    lits = [x if pos[u] < pos[v] else -x for (u, v), x in var.order.items()]
    lits += [x if layout.pages[e] == p else -x for (e, p), x in var.page.items()]
    return sorted(lits, key=abs)


def check_model(cnf: Cnf, model: Sequence[int]) -> bool:
    """True iff ``model`` satisfies every clause."""
    true = {lit for lit in model}
    return all(any(lit in true for lit in c) for c in cnf.clauses)
