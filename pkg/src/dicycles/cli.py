"""Command-line interface: ``dicycles <command> [flags]``.

Exit codes: 0 success (optimal), 2 valid but budget-limited result,
1 input error (bad flags, unreadable or malformed file) or a failed
verification.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from dicycles.digraph import Digraph, DigraphError
from dicycles.formats import (
    CertificateMismatch,
    InstanceFormatError,
    check_document,
    dump_document,
    emit_instance,
    mapping_comments,
    parse_instance,
    result_document,
)
from dicycles.generators import PRNG_NAME, GenSpec
from dicycles.lab import (
    SURVEY_COLUMNS,
    audit_lu_claim,
    digon_vertices,
    gap_survey,
    verify_duality,
    verify_lemma_roundtrip,
)
from dicycles.linegraph import build_line_digraph
from dicycles.solvers import (
    DEFAULT_NODE_LIMIT,
    TIME_LIMIT_ENV,
    CertificateError,
    SolveBudget,
    default_time_limit_ms,
    erdos_posa_gate,
    max_disjoint_cycle_packing,
    min_feedback_arc_set,
    min_feedback_vertex_set,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2
COMMANDS = ("gen", "transform", "pack", "cover", "gate", "verify", "survey")

log = logging.getLogger("dicycles")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", default="-", help="instance file (default: stdin)")
    common.add_argument("--output", default="-", help="output file (default: stdout)")
    common.add_argument("--k", type=int, default=None)
    common.add_argument("--mode", choices=("arc", "vertex"), default="arc")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    common.add_argument("--time-limit-ms", type=int, default=None)
    common.add_argument("--format", choices=("edge-list", "dot", "report", "csv"), default=None)
    common.add_argument("--check", action="store_true", help="re-validate the written certificate")
    common.add_argument("--timings", action="store_true", help="record wall-clock time in reports")
    common.add_argument("--family", choices=("random", "rose", "digon-chain"), default="random")
    common.add_argument("--n", type=int, default=6, help="random: vertex count")
    common.add_argument("--p", type=float, default=0.3, help="random: arc probability")
    common.add_argument("--petals", type=int, default=2, help="rose: number of petals")
    common.add_argument("--petal-length", type=int, default=3, help="rose: petal length")
    common.add_argument("--links", type=int, default=1, help="digon-chain: number of digons")
    common.add_argument("--trials", type=int, default=1, help="survey: instances per family")
    common.add_argument("--cap", type=int, default=5000, help="verify: cycle enumeration cap")

    parser = _Parser(
        prog="dicycles",
        description="Directed cycle packing and covering through the directed line graph.",
        epilog=f"The default time limit ({default_time_limit_ms()} ms) can be overridden "
        f"with the {TIME_LIMIT_ENV} environment variable. Exit codes: 0 optimal, "
        "2 budget-limited, 1 input error or failed verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "gen": "generate an instance",
        "transform": "write the directed line graph L(G)",
        "pack": "maximum disjoint cycle packing",
        "cover": "minimum feedback arc (or vertex) set",
        "gate": "k arc-disjoint cycles, or a minimum feedback arc set",
        "verify": "round-trip, duality and L_u checks on one instance",
        "survey": "nu/tau table over generated instances",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _read_instance(path: str) -> Digraph:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_instance(text)


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _gen_spec(args: argparse.Namespace) -> GenSpec:
    if args.family == "random":
        params = {"n": args.n, "p": args.p}
    elif args.family == "rose":
        params = {"r": args.petals, "length": args.petal_length}
    else:
        params = {"m": args.links}
    return GenSpec(args.family, params, args.seed)


def _budget(args: argparse.Namespace) -> SolveBudget:
    limit = args.time_limit_ms if args.time_limit_ms is not None else default_time_limit_ms()
    try:
        return SolveBudget(args.node_limit, limit)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_gen(args) -> int:
    spec = _gen_spec(args)
    G = spec.build()
    _write(args.output, emit_instance(G, args.format or "edge-list", [spec.header()]))
    return EXIT_OK


def _cmd_transform(args) -> int:
    G = _read_instance(args.input)
    LG = build_line_digraph(G)
    comments = [f"line digraph of a {G.n}-vertex {G.m}-arc digraph"] + mapping_comments(LG)
    _write(args.output, emit_instance(LG.graph, args.format or "edge-list", comments))
    return EXIT_OK


def _cmd_solve(args) -> int:
    G = _read_instance(args.input)
    budget = _budget(args)
    if args.command == "pack":
        result = max_disjoint_cycle_packing(G, args.mode, budget)
    elif args.command == "cover":
        solver = min_feedback_arc_set if args.mode == "arc" else min_feedback_vertex_set
        result = solver(G, budget)
    else:
        if args.k is None or args.k < 1:
            raise UsageError("gate needs --k with a positive value")
        result = erdos_posa_gate(G, args.k, budget)
    text = dump_document(result_document(args.command, G, result, args.timings))
    _write(args.output, text)
    if args.check:
        check_document(json.loads(text), G)
    return EXIT_OK if result.optimal else EXIT_BUDGET


def _cmd_verify(args) -> int:
    G = _read_instance(args.input)
    budget = _budget(args)
    roundtrip = verify_lemma_roundtrip(G, args.cap)
    duality = verify_duality(G, budget)
    audit = audit_lu_claim(G)
    unexpected = sorted(set(audit.failing) - digon_vertices(G))
    report = {
        "command": "verify",
        "roundtrip": {
            "passed": roundtrip.passed,
            "partial": roundtrip.partial,
            "base_cycles": roundtrip.base_cycles,
            "line_cycles": roundtrip.line_cycles,
            "counterexamples": list(roundtrip.counterexamples),
        },
        "duality": {
            "nu_arc": duality.nu_arc,
            "tau_arc": duality.tau_arc,
            "nu_vertex_line": duality.nu_vertex_line,
            "tau_vertex_line": duality.tau_vertex_line,
            "all_optimal": duality.all_optimal,
            "equalities_hold": duality.equalities_hold,
        },
        "lu_audit": {
            "failing_vertices": audit.failing,
            "digon_vertices": sorted(digon_vertices(G)),
            "unexpected_failures": unexpected,
            "witnesses": {
                str(e.vertex): [list(a) for a in e.witness.arcs]
                for e in audit.entries
                if e.witness is not None
            },
        },
    }
    _write(args.output, dump_document(report))
    if not roundtrip.passed or duality.equalities_hold is False or unexpected:
        return EXIT_INPUT
    if roundtrip.partial or not duality.all_optimal:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_survey(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    report = gap_survey([_gen_spec(args)], args.trials, _budget(args))
    if (args.format or "csv") == "report":
        doc = {
            "command": "survey",
            "columns": list(SURVEY_COLUMNS),
            "rows": [[getattr(r, c) for c in SURVEY_COLUMNS] for r in report.rows],
            "summary": report.summary,
            "prng": PRNG_NAME,
        }
        _write(args.output, dump_document(doc))
    else:
        _write(args.output, report.to_csv())
    return EXIT_OK if report.summary["non_optimal_rows"] == 0 else EXIT_BUDGET


HANDLERS = {
    "gen": _cmd_gen,
    "transform": _cmd_transform,
    "pack": _cmd_solve,
    "cover": _cmd_solve,
    "gate": _cmd_solve,
    "verify": _cmd_verify,
    "survey": _cmd_survey,
}


def run(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return HANDLERS[args.command](args)
    except (UsageError, InstanceFormatError, DigraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CertificateMismatch, CertificateError) as exc:
        print(f"certificate check failed: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
