"""Command-line interface.

Exit codes: 0 for the affirmative answer of a subcommand (Sat, valid,
Certified, no violations), 1 for the negative one, 2 for an exhausted
budget, 64 and above for usage, input and format problems.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import cnf
from .audit import AUDITORS, run_audits
from .errors import FormatError, MixedLayoutError, SizeCapExceeded
from .formats import parse_lg, parse_lg_tree, parse_ll, read_text, write_ll, write_tree_lg
from .graph import GklParams, build_gkl, gkl_size
from .layout import PageSpec, validate
from .search.claims import CLAIM_IDS, GADGETS, certify_claim, certify_gadget
from .search.oracle import DEFAULT_VERTEX_CAP, count_all, enumerate_all
from .search.solver import DEFAULT_BUDGET, Status, solve

EXIT_OK, EXIT_NO, EXIT_BUDGET = 0, 1, 2
EXIT_USAGE, EXIT_IO, EXIT_FORMAT, EXIT_CAP = 64, 66, 65, 67


class _UsageError(Exception):
    pass


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot write: {exc.strerror}", path=path) from None


def _spec(args: argparse.Namespace) -> PageSpec:
    try:
        return PageSpec(args.stacks, args.queues)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _graph(path: str):
    graph, _ = parse_lg(read_text(path))
    return graph


def _layout(path: str):
    return parse_ll(read_text(path))


def _add_spec(p: argparse.ArgumentParser) -> None:
    p.add_argument("--stacks", "-s", type=int, required=True)
    p.add_argument("--queues", "-q", type=int, required=True)


def cmd_gen(args: argparse.Namespace) -> int:
    tree = build_gkl(GklParams(args.k, args.ell), vertex_cap=args.vertex_cap)
    _write(args.output, write_tree_lg(tree))
    print(f"wrote G({args.k},{args.ell}) V={tree.graph.vertex_count} E={tree.graph.edge_count} to {args.output}", file=sys.stderr)
    return EXIT_OK


def cmd_size(args: argparse.Namespace) -> int:
    v, e = gkl_size(GklParams(args.k, args.ell), max_bits=None)
    _out(f"V={v} E={e}")
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    if args.threads < 1:
        raise _UsageError("--threads must be at least 1")
    if args.threads > 1 and args.deterministic:
        raise _UsageError("--deterministic runs single-threaded; drop --threads or --deterministic")
    graph = _graph(args.file)
    result = solve(graph, _spec(args), budget=args.budget, deterministic=args.threads <= 1, threads=args.threads)
    _out(f"status {result.status.value} nodes={result.stats.nodes}")
    print(f"time {result.stats.seconds:.3f}s", file=sys.stderr)
    if result.status is Status.SAT:
        text = write_ll(result.layout)
        if args.output:
            _write(args.output, text)
        else:
            _out(text)
        return EXIT_OK
    return EXIT_NO if result.status is Status.UNSAT else EXIT_BUDGET


def cmd_verify(args: argparse.Namespace) -> int:
    report = validate(_graph(args.file), _layout(args.cert), _spec(args))
    _out(str(report))
    return EXIT_OK if report.ok else EXIT_NO


def cmd_oracle(args: argparse.Namespace) -> int:
    graph = _graph(args.file)
    spec = _spec(args)
    canonical = not args.all
    if args.count_only:
        count = count_all(graph, spec, vertex_cap=args.vertex_cap, canonical=canonical)
        _out(f"orders={count.orders_examined} layouts={count.layouts}")
        return EXIT_OK if count.layouts else EXIT_NO
    found = 0
    for layout in enumerate_all(graph, spec, vertex_cap=args.vertex_cap, canonical=canonical):
        found += 1
        _out(write_ll(layout))
    print(f"{found} layout(s)", file=sys.stderr)
    return EXIT_OK if found else EXIT_NO


def cmd_audit(args: argparse.Namespace) -> int:
    lemmas = [x.strip() for x in args.lemmas.split(",") if x.strip()]
    unknown = [x for x in lemmas if x not in AUDITORS]
    if not lemmas or unknown:
        raise _UsageError(f"--lemmas must be a comma list from {','.join(AUDITORS)}")
    tree = parse_lg_tree(read_text(args.file))
    reports = run_audits(tree, _layout(args.cert), lemmas, check_validity=not args.skip_validity)
    for r in reports:
        _out(r.to_text())
    return EXIT_NO if any(r.violations for r in reports) else EXIT_OK


def cmd_gadget(args: argparse.Namespace) -> int:
    case = args.case.lower()
    if case in GADGETS:
        report = certify_gadget(case, args.ell)
    else:
        if args.ell is not None:
            raise _UsageError("--ell applies to the smiley and pattern gadgets only")
        report = certify_claim(case)
    _out(report.to_text())
    return EXIT_OK if report.certified else EXIT_NO


def cmd_export_cnf(args: argparse.Namespace) -> int:
    formula = cnf.encode(_graph(args.file), _spec(args))
    _write(args.output, formula.to_dimacs())
    print(f"vars={formula.variable_count} clauses={len(formula.clauses)}", file=sys.stderr)
    return EXIT_OK


def cmd_import_model(args: argparse.Namespace) -> int:
    graph = _graph(args.file)
    text = read_text(args.model)
    if any(line.strip().split()[:2] == ["s", "UNSATISFIABLE"] for line in text.split("\n") if line.strip()):
        _out("status Unsat")
        return EXIT_NO
    layout = cnf.decode(graph, _spec(args), cnf.parse_model(text))
    _write(args.output, write_ll(layout))
    _out("status Sat")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixedlayout", description=__doc__.split("\n")[0])
    parser.add_argument("--seed", type=int, default=0, help="seed for any randomized sampling")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph family member")
    gen.add_argument("family", choices=["gkl"])
    gen.add_argument("--k", type=int, required=True)
    gen.add_argument("--ell", type=int, required=True)
    gen.add_argument("-o", "--output", required=True)
    gen.add_argument("--vertex-cap", type=int, default=1_000_000)
    gen.set_defaults(func=cmd_gen)

    size = sub.add_parser("size", help="closed-form size of a family member")
    size.add_argument("family", choices=["gkl"])
    size.add_argument("--k", type=int, required=True)
    size.add_argument("--ell", type=int, required=True)
    size.set_defaults(func=cmd_size)

    p = sub.add_parser("solve", help="search for a layout")
    p.add_argument("file")
    _add_spec(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a layout certificate")
    p.add_argument("file")
    p.add_argument("cert")
    _add_spec(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="enumerate layouts of a small graph")
    p.add_argument("file")
    _add_spec(p)
    p.add_argument("--all", action="store_true", help="do not identify a layout with its reversal")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--vertex-cap", type=int, default=DEFAULT_VERTEX_CAP)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("audit", help="audit a layout of G(k,l) against the lemmas")
    p.add_argument("file")
    p.add_argument("cert")
    p.add_argument("--lemmas", required=True, help=f"comma list from {','.join(AUDITORS)}")
    p.add_argument("--skip-validity", action="store_true", help="audit even if the layout is not valid")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("gadget", help="certify a built-in gadget or proof case")
    p.add_argument("--case", required=True, type=str.lower, choices=[*GADGETS, *CLAIM_IDS])
    p.add_argument("--ell", type=int, help="number of free attachments for gadgets")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("export-cnf", help="write the DIMACS encoding")
    p.add_argument("file")
    _add_spec(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_export_cnf)

    p = sub.add_parser("import-model", help="decode a SAT model into a certificate")
    p.add_argument("file")
    p.add_argument("model")
    _add_spec(p)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_import_model)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_IO if exc.line is None and exc.path is not None else EXIT_FORMAT
    except SizeCapExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (MixedLayoutError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
