from __future__ import annotations

from itertools import product

import pytest

from mixedlayout.errors import ScaffoldError
from mixedlayout.graph import Graph
from mixedlayout.layout import MIXED, PageId, PageKind, LinearLayout, is_valid
from mixedlayout.patterns import ALL_KINDS, PagedOrder, WitnessKind, revalidate
from mixedlayout.search.certify import (
    AttachmentConstraint,
    Scaffold,
    Verdict,
    certify_step,
    free,
)
from mixedlayout.search.claims import (
    CLAIM_IDS,
    certify_claim,
    certify_gadget,
    gadget_scaffold,
    l4_scaffolds,
    proof_kinds,
)

S, Q = PageKind.STACK, PageKind.QUEUE


def brute_force_extends(scaffold: Scaffold) -> bool:
    """Does any full placement (all slots, all page choices) give a valid 1-stack 1-queue layout?

    Assumes a single spec of unconstrained attachments on a fixed edge.
    """
    (spec,) = scaffold.free_specs
    names = list(scaffold.fixed_vertices)
    idx = {n: i for i, n in enumerate(scaffold.all_names)}
    base = {tuple(sorted((idx[a], idx[b]))): PageId(k) for a, b, k in scaffold.fixed_edges}
    n = len(scaffold.all_names)

    def placements(order, remaining):
        if not remaining:
            yield order
            return
        w = remaining[0]
        for slot in range(len(order) + 1):
            yield from placements(order[:slot] + [w] + order[slot:], remaining[1:])

    t0, t1 = idx[spec.target_edge[0]], idx[spec.target_edge[1]]
    new_edges = [tuple(sorted((idx[w], t))) for w in spec.names for t in (t0, t1)]
    graph = Graph(n, tuple(base) + tuple(new_edges))
    for order in placements(names, list(spec.names)):
        ids = tuple(idx[v] for v in order)
        for kinds in product((S, Q), repeat=len(new_edges)):
            pages = dict(base)
            pages.update({e: PageId(k) for e, k in zip(new_edges, kinds)})
            if is_valid(graph, LinearLayout(ids, pages), MIXED):
                return True
    return False


class TestGadgets:
    def test_smiley_three_certified_one_refutable(self):
        assert certify_gadget("smiley", 3).verdict is Verdict.CERTIFIED
        assert certify_gadget("smiley", 1).verdict is Verdict.REFUTABLE

    def test_monotone_in_attachments(self):
        for n in (3, 4, 5):
            assert certify_gadget("smiley", n).certified

    @pytest.mark.parametrize("name", ["p1", "p1a", "p2"])
    def test_patterns_with_five_attachments(self, name):
        report = certify_gadget(name, 5)
        assert report.certified
        assert set(report.histogram()) <= {"Crossing", "Rainbow"}

    def test_one_attachment_to_p1_can_be_placed(self):
        report = certify_gadget("p1", 1)
        assert report.verdict is Verdict.REFUTABLE
        ext = report.extensions()
        # a lone attachment survives as a stack- or queue-attachment, never as a mixed one
        assert ext
        assert all(len({k for _, _, k in o.free_pages}) == 1 for o in ext)

    def test_p2_reasons(self):
        texts = [o.witness_text for o in certify_gadget("p2", 5).outcomes]
        assert any(t.startswith("Rainbow") and "(p3,p7)Q0" in t for t in texts)
        assert any(t.startswith("Crossing") and "(p2,p5)S0" in t for t in texts)

    @pytest.mark.parametrize("name,count", [("smiley", 1), ("smiley", 2), ("smiley", 3), ("p1", 1), ("p1", 2), ("p2", 1)])
    def test_verdict_matches_brute_force(self, name, count):
        scaffold = gadget_scaffold(name, count)
        expected = Verdict.REFUTABLE if brute_force_extends(scaffold) else Verdict.CERTIFIED
        assert certify_step(scaffold).verdict is expected

    def test_witnesses_revalidate(self):
        scaffold = gadget_scaffold("p1", 3)
        idx = {n: i for i, n in enumerate(scaffold.all_names)}
        fixed = {tuple(sorted((idx[a], idx[b]))): PageId(k) for a, b, k in scaffold.fixed_edges}
        report = certify_step(scaffold)
        assert report.extensions()
        for o in report.outcomes:
            if not o.refuted:
                continue
            pages = dict(fixed)
            pages.update({tuple(sorted((idx[a], idx[b]))): PageId(k) for a, b, k in o.free_pages})
            view = PagedOrder({idx[v]: i for i, v in enumerate(o.order)}, pages)
            assert revalidate(o.witness, view)


class TestScaffoldChecks:
    def base(self):
        return Scaffold(("a", "b", "c", "d"), (("a", "c", S), ("b", "d", Q)))

    def test_fixed_violation_is_an_error(self):
        bad = Scaffold(("a", "b", "c", "d"), (("a", "c", S), ("b", "d", S)))
        with pytest.raises(ScaffoldError):
            certify_step(bad)

    def test_fixed_structure_in_vocabulary_is_an_error(self):
        smiley = gadget_scaffold("smiley", 1)
        certify_step(smiley)  # fine with crossings and rainbows only
        with pytest.raises(ScaffoldError):
            certify_step(smiley, ALL_KINDS)

    @pytest.mark.parametrize(
        "spec",
        [
            free(("a", "z")),
            free(("a", "b")),
            free(("a", "c"), 6),
            free(("a", "c"), region=("q", None)),
            free(("a", "c"), constraint=AttachmentConstraint.MIXED, stack_endpoint="b"),
            free(("a", "c"), prefix="b"),
        ],
    )
    def test_bad_specs(self, spec):
        with pytest.raises(ScaffoldError):
            certify_step(self.base().with_free(spec))

    def test_vertex_limit(self):
        big = self.base().with_free(*(free(("a", "c"), 5, prefix=f"w{i}_") for i in range(3)))
        with pytest.raises(ScaffoldError):
            certify_step(big)

    def test_regions_and_forced_pages(self):
        sc = self.base().with_free(free(("a", "c"), constraint=AttachmentConstraint.STACK, region=("c", None)))
        report = certify_step(sc)
        assert {o.order.index("w") for o in report.outcomes} == {3, 4}
        assert all(k is S for o in report.outcomes for _, _, k in o.free_pages)

    def test_attachment_to_an_attachment(self):
        sc = self.base().with_free(free(("a", "c"), prefix="w"), free(("w", "a"), prefix="y"))
        report = certify_step(sc)
        assert report.verdict is Verdict.REFUTABLE

    def test_mirror_round_trip(self):
        sc = gadget_scaffold("p1", 2)
        back = sc.mirrored().mirrored()
        assert back == sc


class TestClaims:
    @pytest.mark.parametrize("case", CLAIM_IDS)
    def test_certified_with_the_written_reasons(self, case):
        report = certify_claim(case)
        assert report.certified
        kinds = {WitnessKind(k) for k in report.histogram()}
        assert kinds == proof_kinds()[case]

    def test_case_ids_are_case_insensitive(self):
        assert certify_claim("L4C1").certified
        with pytest.raises(ValueError):
            certify_claim("T1C7")

    def test_t1c3_left_of_u_is_a_p2(self):
        report = certify_claim("t1c3")
        p2 = [o for o in report.outcomes if o.witness.kind is WitnessKind.P2]
        assert [o.witness_text.split(" ")[1] for o in p2] == ["<w,u,x1,x2,x3,x4,v>"]

    def test_t1c1_right_of_x5_is_a_p2(self):
        report = certify_claim("t1c1")
        (o,) = [o for o in report.outcomes if o.witness.kind is WitnessKind.P2]
        assert o.order[-1] == "w"
        assert o.witness_text.split(" ")[1] == "<u,v,x2,x3,x4,x5,w>"

    def test_l4c3_closes_with_an_unconstrained_partner(self):
        for i in range(2, 7):
            ((_, sc),) = l4_scaffolds("l4c3", i, free_partner=True)
            assert certify_step(sc, ALL_KINDS).certified

    def test_report_text(self):
        text = certify_claim("l4c1").to_text()
        first, *rest = text.split("\n")
        assert first == "verdict Certified placements=10 witnesses Rainbow=10"
        assert all("outcome refuted witness Rainbow" in line for line in rest)
