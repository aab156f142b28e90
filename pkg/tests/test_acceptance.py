"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import contextlib
import io
import subprocess
import sys
import time
from pathlib import Path

from pysat.solvers import Solver

from mixedlayout import cnf
from mixedlayout.cli import main
from mixedlayout.audit import run_audits
from mixedlayout.corpus import complete_bipartite, k5_minus_edge, small_corpus
from mixedlayout.formats import write_lg, write_tree_lg
from mixedlayout.graph import GklParams, build_gkl, gkl_size
from mixedlayout.layout import MIXED, PageSpec, validate
from mixedlayout.patterns import WitnessKind
from mixedlayout.search.claims import CLAIM_IDS, certify_claim, certify_gadget, proof_kinds
from mixedlayout.search.oracle import count_all, enumerate_all, first_layout
from mixedlayout.search.solver import Status, solve

SPECS_SMALL = (PageSpec(1, 0), PageSpec(0, 1), PageSpec(1, 1))


def _sat(formula: cnf.Cnf) -> bool:
    with Solver(name="cadical153", bootstrap_with=formula.clauses) as s:
        return s.solve()


def _cli(*argv) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "mixedlayout", *map(str, argv)], capture_output=True, text=True, check=False
    )


def test_criterion_1_k5_minus_edge_layouts(criterion):
    start = time.perf_counter()
    g = k5_minus_edge()
    found = {}
    for spec in (PageSpec(2, 0), PageSpec(0, 2), PageSpec(1, 1)):
        layout = first_layout(g, spec)
        found[str(spec)] = layout is not None and validate(g, layout, spec).ok
    elapsed = time.perf_counter() - start
    ok = all(found.values()) and elapsed < 5
    assert criterion(1, ok, f"verified={found} time={elapsed:.2f}s (<5s)")


def test_criterion_2_k23_not_one_stack(criterion):
    start = time.perf_counter()
    g = complete_bipartite(2, 3)
    count = count_all(g, PageSpec(1, 0), canonical=False)
    unsat = not _sat(cnf.encode(g, PageSpec(1, 0)))
    elapsed = time.perf_counter() - start
    ok = count.orders_examined == 120 and count.layouts == 0 and unsat and elapsed < 1
    assert criterion(2, ok, f"orders={count.orders_examined} layouts={count.layouts} cnf_unsat={unsat} time={elapsed:.2f}s (<1s)")


def test_criterion_3_exhaustive_audit(criterion):
    start = time.perf_counter()
    details = []
    ok = True
    for ell in (3, 4):
        tree = build_gkl(GklParams(2, ell))
        layouts = violations = met = 0
        for layout in enumerate_all(tree.graph, MIXED, canonical=False):
            layouts += 1
            for r in run_audits(tree, layout, ["1", "3"]):
                violations += len(r.violations)
                met += r.hypothesis_met
        ok &= layouts > 0 and violations == 0 and met > 0
        details.append(f"G(2,{ell}) layouts={layouts} violations={violations} hypothesis_met={met}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    assert criterion(3, ok, f"{'; '.join(details)} time={elapsed:.1f}s (<60s)")


def test_criterion_4_smiley_gadget(criterion):
    start = time.perf_counter()
    three = certify_gadget("smiley", 3)
    one = certify_gadget("smiley", 1)
    elapsed = time.perf_counter() - start
    ok = three.certified and not one.certified and elapsed < 30
    assert criterion(4, ok, f"3 attachments={three.verdict.value} 1 attachment={one.verdict.value} time={elapsed:.2f}s (<30s)")


def test_criterion_5_pattern_gadgets(criterion):
    start = time.perf_counter()
    reports = {name: certify_gadget(name, 5) for name in ("p1", "p1a", "p2")}
    p2_texts = [o.witness_text for o in reports["p2"].outcomes if o.refuted]
    rainbow_p3p7 = any(t.startswith("Rainbow") and "(p3,p7)" in t for t in p2_texts)
    crossing_p2p5 = any(t.startswith("Crossing") and "(p2,p5)" in t for t in p2_texts)
    elapsed = time.perf_counter() - start
    ok = all(r.certified for r in reports.values()) and rainbow_p3p7 and crossing_p2p5 and elapsed < 600
    verdicts = " ".join(f"{n}={r.verdict.value}" for n, r in reports.items())
    assert criterion(
        5, ok, f"{verdicts} p2_rainbow_p3p7={rainbow_p3p7} p2_crossing_p2p5={crossing_p2p5} time={elapsed:.1f}s (<600s)"
    )


def test_criterion_6_claim_cases(criterion):
    start = time.perf_counter()
    expected = proof_kinds()
    bad = []
    for case in CLAIM_IDS:
        report = certify_claim(case)
        kinds = frozenset(WitnessKind(k) for k, v in report.histogram().items() if v)
        if not report.certified or kinds != expected[case]:
            bad.append(case)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    assert criterion(6, ok, f"cases={len(CLAIM_IDS)} mismatched={bad} time={elapsed:.1f}s (<600s)")


def test_criterion_7_three_way_agreement(criterion):
    start = time.perf_counter()
    corpus = small_corpus(6)
    disagreements = []
    for name, g in corpus.items():
        for spec in SPECS_SMALL:
            oracle = count_all(g, spec).layouts > 0
            result = solve(g, spec)
            sat = _sat(cnf.encode(g, spec))
            if result.status is Status.BUDGET or not (oracle == (result.status is Status.SAT) == sat):
                disagreements.append(f"{name}{spec}")
    elapsed = time.perf_counter() - start
    ok = not disagreements and elapsed < 300
    assert criterion(
        7, ok, f"graphs={len(corpus)} specs=3 disagreements={disagreements} time={elapsed:.1f}s (<300s)"
    )


def test_criterion_8_size_formulas(criterion):
    start = time.perf_counter()
    mismatches = []
    for k in range(1, 5):
        for ell in range(1, 4):
            tree = build_gkl(GklParams(k, ell))
            if gkl_size(GklParams(k, ell)) != (tree.graph.vertex_count, tree.graph.edge_count):
                mismatches.append((k, ell))
    cli_start = time.perf_counter()
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["size", "gkl", "--k", "5", "--ell", "33"])
    cli_ok = code == 0 and buf.getvalue() == "V=10075562 E=20151121\n"
    elapsed = time.perf_counter() - start
    ok = not mismatches and cli_ok and elapsed < 1
    assert criterion(
        8, ok, f"mismatches={mismatches} size_cli={buf.getvalue().strip()!r} cli={time.perf_counter() - cli_start:.3f}s time={elapsed:.2f}s (<1s)"
    )


def test_criterion_9_g33_two_stacks(criterion):
    start = time.perf_counter()
    tree = build_gkl(GklParams(3, 3))
    result = solve(tree.graph, PageSpec(2, 0))
    valid = result.status is Status.SAT and validate(tree.graph, result.layout, PageSpec(2, 0)).ok
    elapsed = time.perf_counter() - start
    shape = (tree.graph.vertex_count, tree.graph.edge_count)
    ok = valid and shape == (26, 49) and elapsed < 300
    assert criterion(
        9, ok, f"V,E={shape} status={result.status.value} nodes={result.stats.nodes} valid={valid} time={elapsed:.2f}s (<300s)"
    )


def test_criterion_10_determinism(criterion, tmp_path: Path):
    k5 = tmp_path / "k5e.lg"
    k5.write_text(write_lg(k5_minus_edge()))
    g33 = tmp_path / "g33.lg"
    g33.write_text(write_tree_lg(build_gkl(GklParams(3, 3))))
    runs = {
        "oracle": [("oracle", k5, "-s", s, "-q", q) for s, q in ((2, 0), (0, 2), (1, 1))],
        "gadget": [("gadget", "--case", "smiley", "--ell", n) for n in (3, 1)],
        "solve": [("solve", g33, "-s", 2, "-q", 0, "--deterministic")],
    }
    differing = []
    for label, commands in runs.items():
        for argv in commands:
            first, second = _cli(*argv), _cli(*argv)
            if first.stdout != second.stdout or first.returncode != second.returncode or not first.stdout:
                differing.append(label)
    ok = not differing
    assert criterion(10, ok, f"commands={sum(map(len, runs.values()))} runs_each=2 differing={differing}")
