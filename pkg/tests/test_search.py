from __future__ import annotations

from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedlayout.corpus import complete_bipartite, k5_minus_edge, small_corpus
from mixedlayout.errors import SizeCapExceeded
from mixedlayout.formats import write_ll
from mixedlayout.graph import GklParams, Graph, build_gkl
from mixedlayout.layout import MIXED, LinearLayout, PageSpec, is_valid
from mixedlayout.search.oracle import count_all, enumerate_all, first_layout
from mixedlayout.search.solver import Status, hunt, solve

SPECS = [PageSpec(1, 0), PageSpec(0, 1), PageSpec(1, 1), PageSpec(2, 0)]


def slow_count(graph: Graph, spec: PageSpec) -> int:
    """Every order and page tuple, checked with the layout module."""
    pages = spec.pages
    total = 0
    for order in permutations(range(graph.vertex_count)):
        for choice in product(pages, repeat=graph.edge_count):
            if is_valid(graph, LinearLayout(order, dict(zip(graph.edges, choice))), spec):
                total += 1
    return total


class TestOracle:
    def test_single_edge(self):
        g = Graph(2, ((0, 1),))
        assert count_all(g, PageSpec(1, 0)).layouts == 1
        assert count_all(g, PageSpec(1, 0), canonical=False).layouts == 2

    def test_k23_has_no_one_stack_layout(self):
        count = count_all(complete_bipartite(2, 3), PageSpec(1, 0), canonical=False)
        assert count.orders_examined == 120
        assert count.layouts == 0

    @pytest.mark.parametrize("spec", [PageSpec(2, 0), PageSpec(0, 2), PageSpec(1, 1)])
    def test_k5_minus_edge_has_two_page_layouts(self, spec):
        g = k5_minus_edge()
        layout = first_layout(g, spec)
        assert layout is not None and is_valid(g, layout, spec)

    def test_cap(self):
        with pytest.raises(SizeCapExceeded):
            count_all(Graph(8, ()), MIXED)
        with pytest.raises(ValueError):
            count_all(Graph(3, ()), PageSpec(2, 1))

    @pytest.mark.parametrize("name", ["path4", "cycle4", "twotree5_3", "twotree5_4"])
    @pytest.mark.parametrize("spec", [PageSpec(1, 0), PageSpec(0, 1), MIXED])
    def test_counts_match_a_slow_enumeration(self, name, spec):
        g = small_corpus(5)[name]
        assert count_all(g, spec, canonical=False).layouts == slow_count(g, spec)

    def test_enumerated_layouts_are_distinct_and_valid(self):
        g = small_corpus(5)["cycle5"]
        seen = set()
        for layout in enumerate_all(g, MIXED):
            assert is_valid(g, layout, MIXED)
            seen.add(write_ll(layout))
        assert len(seen) == count_all(g, MIXED).layouts

    @pytest.mark.parametrize("name,graph", [(n, g) for n, g in small_corpus(5).items()])
    def test_reversal_canonicalization_halves_the_count(self, name, graph):
        # for n >= 2 no order equals its reversal, so no layout is self-reverse
        for spec in (PageSpec(1, 0), MIXED):
            full = count_all(graph, spec, canonical=False).layouts
            assert 2 * count_all(graph, spec).layouts == full


class TestSolver:
    @pytest.mark.parametrize("name,graph", list(small_corpus(6).items()))
    def test_agrees_with_oracle(self, name, graph):
        for spec in SPECS:
            expected = Status.SAT if first_layout(graph, spec) is not None else Status.UNSAT
            result = solve(graph, spec)
            assert result.status is expected, (name, spec)
            if result.layout is not None:
                assert is_valid(graph, result.layout, spec)

    def test_g23(self, g23):
        assert solve(g23.graph, MIXED).status is Status.SAT
        expected = Status.SAT if first_layout(g23.graph, PageSpec(0, 1)) else Status.UNSAT
        assert solve(g23.graph, PageSpec(0, 1)).status is expected

    def test_k23_unsat(self):
        assert solve(complete_bipartite(2, 3), PageSpec(1, 0)).status is Status.UNSAT

    def test_budget_is_never_unsat(self):
        result = solve(complete_bipartite(2, 3), PageSpec(1, 0), budget=5)
        assert result.status is Status.BUDGET and result.layout is None

    def test_g33_two_stacks(self, g33):
        result = solve(g33.graph, PageSpec(2, 0))
        assert result.status is Status.SAT
        assert is_valid(g33.graph, result.layout, PageSpec(2, 0))

    def test_deterministic_certificates(self, g33):
        a = solve(g33.graph, MIXED)
        b = solve(g33.graph, MIXED)
        assert write_ll(a.layout) == write_ll(b.layout)

    def test_first_base_vertex_left_of_second(self, g33):
        layout = solve(g33.graph, PageSpec(2, 0)).layout
        assert layout.precedes(0, 1)

    def test_parallel_mode(self):
        g = build_gkl(GklParams(2, 4)).graph
        result = solve(g, MIXED, deterministic=False, threads=2)
        assert result.status is Status.SAT
        assert is_valid(g, result.layout, MIXED)
        again = solve(g, MIXED, deterministic=False, threads=2)
        assert write_ll(again.layout) == write_ll(result.layout)

    def test_empty_and_edgeless_graphs(self):
        assert solve(Graph(0, ()), MIXED).status is Status.SAT
        assert solve(Graph(3, ()), PageSpec(1, 0)).status is Status.SAT


def test_hunt_small_range():
    rows = hunt(range(1, 3), range(1, 5), MIXED)
    assert len(rows) == 8
    assert all(r.result.status is Status.SAT for r in rows)
    assert rows[0].to_text().startswith("k=1 ell=1 V=2 E=1 status=Sat")


def test_hunt_reports_oversized_instances_without_building():
    (row,) = hunt([5], [33], MIXED)
    assert row.result.status is Status.BUDGET
    assert row.vertices == 10_075_562


graphs = st.integers(2, 6).flatmap(
    lambda n: st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] < p[1])).map(
        lambda es: Graph(n, tuple(es))
    )
)


@settings(max_examples=60, deadline=None)
@given(graphs, st.sampled_from(SPECS))
def test_random_graphs_solver_matches_oracle(graph, spec):
    expected = first_layout(graph, spec) is not None
    assert (solve(graph, spec).status is Status.SAT) == expected
