from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedlayout.errors import AdjacentEdgesError, GraphError, LayoutStructureError
from mixedlayout.graph import Graph, TwoTree
from mixedlayout.layout import (
    MIXED,
    Q0,
    S0,
    AttachmentClass,
    LinearLayout,
    PageId,
    PageKind,
    PageSpec,
    classify_attachment,
    crosses,
    max_rainbow,
    max_twist,
    nests,
    validate,
    is_valid,
)

A, B, C, D = 0, 1, 2, 3
ABCD = LinearLayout((A, B, C, D))


class TestPairPredicates:
    def test_crossing(self):
        assert crosses((A, C), (B, D), ABCD)
        assert not crosses((A, B), (C, D), ABCD)
        assert not crosses((A, D), (B, C), ABCD)

    def test_nesting(self):
        assert nests((A, D), (B, C), ABCD)
        assert not nests((A, C), (B, D), ABCD)
        assert not nests((A, B), (C, D), ABCD)

    def test_symmetric_in_arguments(self):
        assert crosses((B, D), (A, C), ABCD)
        assert nests((B, C), (A, D), ABCD)

    def test_adjacent_edges_are_rejected(self):
        with pytest.raises(AdjacentEdgesError):
            crosses((A, C), (A, D), ABCD)
        with pytest.raises(AdjacentEdgesError):
            nests((A, D), (D, B), ABCD)


class TestPageTypes:
    def test_page_id_round_trip(self):
        assert str(PageId.parse("Q3")) == "Q3"
        assert PageId.parse("S0") == S0
        with pytest.raises(ValueError):
            PageId.parse("X1")

    def test_spec_membership(self):
        assert S0 in MIXED and Q0 in MIXED
        assert PageId(PageKind.STACK, 1) not in MIXED
        assert Q0 not in PageSpec(2, 0)

    def test_spec_needs_a_page(self):
        with pytest.raises(ValueError):
            PageSpec(0, 0)


class TestValidate:
    def test_single_edge_is_valid_anywhere(self):
        g = Graph(2, ((0, 1),))
        for order in ((0, 1), (1, 0)):
            for page in (S0, Q0):
                assert validate(g, LinearLayout(order, {(0, 1): page}), MIXED).ok

    def test_reports_every_violating_pair(self):
        g = Graph(4, ((0, 2), (1, 3), (0, 3), (1, 2)))
        layout = LinearLayout((0, 1, 2, 3), {(0, 2): S0, (1, 3): S0, (0, 3): Q0, (1, 2): Q0})
        report = validate(g, layout, MIXED)
        assert {v.kind for v in report.violations} == {"crossing", "nesting"}
        assert len(report.violations) == 2
        assert not is_valid(g, layout, MIXED)

    def test_structural_errors_are_distinct(self):
        g = Graph(3, ((0, 1), (1, 2)))
        with pytest.raises(LayoutStructureError):
            validate(g, LinearLayout((0, 1, 2), {(0, 1): S0}), MIXED)
        with pytest.raises(LayoutStructureError):
            validate(g, LinearLayout((0, 1, 2), {(0, 1): S0, (1, 2): PageId(PageKind.STACK, 1)}), MIXED)
        with pytest.raises(LayoutStructureError):
            LinearLayout((0, 0, 2))

    def test_position_is_inverse_of_order(self):
        layout = LinearLayout((2, 0, 3, 1))
        assert [layout.order[layout.position[v]] for v in range(4)] == [0, 1, 2, 3]


def brute_chain(spans, twist):
    best = 1 if spans else 0
    for k in range(2, len(spans) + 1):
        for group in combinations(spans, k):
            ok = True
            for (a, b), (c, d) in combinations(group, 2):
                if len({a, b, c, d}) < 4:
                    ok = False
                    break
                if a > c:
                    a, b, c, d = c, d, a, b
                if twist and not c < b < d or not twist and not d < b:
                    ok = False
                    break
            if ok:
                best = k
    return best


@settings(max_examples=60, deadline=None)
@given(st.permutations(range(7)), st.sets(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=9))
def test_twist_and_rainbow_sizes_match_brute_force(order, pairs):
    edges = {tuple(sorted(p)) for p in pairs if p[0] != p[1]}
    layout = LinearLayout(tuple(order), {e: S0 for e in edges})
    pos = layout.position
    spans = [tuple(sorted((pos[u], pos[v]))) for u, v in edges]
    assert max_twist(layout, S0) == brute_chain(spans, twist=True)
    assert max_rainbow(layout, S0) == brute_chain(spans, twist=False)


class TestAttachmentClass:
    def test_three_classes(self):
        t = TwoTree.single_edge().attach((0, 1)).attach((0, 1)).attach((0, 1))
        pages = {(0, 1): Q0, (0, 2): S0, (1, 2): S0, (0, 3): Q0, (1, 3): Q0, (0, 4): S0, (1, 4): Q0}
        layout = LinearLayout((0, 2, 3, 4, 1), pages)
        assert classify_attachment(t, layout, 2) is AttachmentClass.STACK
        assert classify_attachment(t, layout, 3) is AttachmentClass.QUEUE
        assert classify_attachment(t, layout, 4) is AttachmentClass.MIXED

    def test_base_vertex_has_no_class(self):
        t = TwoTree.single_edge()
        with pytest.raises(GraphError):
            classify_attachment(t, LinearLayout((0, 1), {(0, 1): S0}), 0)
