"""Command-line front end.

Subcommands: mult, charpoly, classify, generate, enumerate, verify, audit,
report.  Trees are given as graph6 text, an inline "u-v,u-v" edge list, a
JSON edge-list file, or graph6 lines on stdin (mult/classify/charpoly).
Eigenvalues use the exact "i/M" syntax for 2*cos(i*pi/M); decimals are
deliberately not accepted.

Exit status: 0 on success with zero violations, 1 when a verification run
found violations, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from treemult.families import BROAD, FamilyKind, Gamma2Mode, classify, generate
from treemult.poly import InvalidSpecError, LambdaSpec
from treemult.spectrum import char_poly, multiplicity
from treemult.tree import (
    DEFAULT_ENUMERATION_LIMIT,
    Tree,
    TreeError,
    emit_graph6,
    enumerate_trees,
    load_edge_json,
    major_count,
    parse_edge_text,
    parse_graph6,
    pendant_count,
)
from treemult.verify import (
    IoFailureError,
    LemmaChecks,
    SweepConfig,
    chebyshev_completeness_audit,
    default_worker_count,
    summarize_records,
    sweep,
)

OUT_DIR_ENV = "TREEMULT_OUT_DIR"


def _add_tree_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--graph6", help="tree as graph6 text")
    group.add_argument("--edges", help='tree as inline edge list "u-v,u-v,..."')
    group.add_argument("--json", dest="json_file", help="tree as JSON edge-list file")


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("human", "json"),
        default="human",
        help="output format (default human)",
    )


def _parse_lambda(text: str) -> LambdaSpec:
    try:
        return LambdaSpec.from_string(text)
    except InvalidSpecError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_mode(text: str) -> Gamma2Mode:
    try:
        return Gamma2Mode(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"mode must be strict or broad, got {text!r}")


def _input_trees(args) -> list[Tree]:
    """Resolve the tree input source; stdin supplies one graph6 per line."""
    if args.graph6:
        return [parse_graph6(args.graph6)]
    if args.edges:
        return [parse_edge_text(args.edges)]
    if args.json_file:
        with open(args.json_file, "r", encoding="utf-8") as f:
            return [load_edge_json(f.read())]
    trees = []
    for line in sys.stdin:
        line = line.strip()
        if line:
            trees.append(parse_graph6(line))
    if not trees:
        raise TreeError("no tree input: pass --graph6/--edges/--json or pipe graph6 lines")
    return trees


def _emit(record: dict, human: str, fmt: str) -> None:
    print(json.dumps(record) if fmt == "json" else human)


def _cmd_mult(args) -> int:
    lam = args.lam
    for t in _input_trees(args):
        m = multiplicity(t, lam)
        p = pendant_count(t)
        gamma = major_count(t)
        _emit(
            {"tree": emit_graph6(t), "lambda": str(lam), "m": m, "p": p, "gamma": gamma},
            f"m={m} p={p} gamma={gamma}",
            args.format,
        )
    return 0


def _cmd_charpoly(args) -> int:
    for t in _input_trees(args):
        coeffs = list(char_poly(t).coeffs)
        _emit(
            {"tree": emit_graph6(t), "coeffs": coeffs},
            " ".join(str(c) for c in coeffs),
            args.format,
        )
    return 0


def _cmd_classify(args) -> int:
    lam = args.lam
    for t in _input_trees(args):
        result = classify(t, lam, args.mode)
        witness = [
            {
                "vertex": step.vertex,
                "clause": step.clause,
                "components": [
                    {"vertices": list(vs), "disposition": label}
                    for vs, label in step.components
                ],
            }
            for step in result.witness
        ]
        human_lines = [result.tag]
        for step in result.witness:
            comps = ", ".join(
                f"{label}{list(vs)}" for vs, label in step.components
            )
            human_lines.append(f"  remove {step.vertex}: {comps}")
        _emit(
            {
                "tree": emit_graph6(t),
                "lambda": str(lam),
                "mode": args.mode.value,
                "result": result.tag,
                "witness": witness,
            },
            "\n".join(human_lines),
            args.format,
        )
    return 0


def _cmd_generate(args) -> int:
    family = FamilyKind.GAMMA if args.family == "gamma" else FamilyKind.GAMMA2
    for t in generate(family, args.k, args.lam, args.n_max, args.mode):
        g6 = emit_graph6(t)
        _emit({"graph6": g6, "n": t.n}, g6, args.format)
    return 0


def _cmd_enumerate(args) -> int:
    for t in enumerate_trees(args.n, args.limit):
        g6 = emit_graph6(t)
        _emit({"graph6": g6, "n": t.n}, g6, args.format)
    return 0


def _default_out_path(name: str) -> str:
    return os.path.join(os.environ.get(OUT_DIR_ENV, "."), name)


def _cmd_verify(args) -> int:
    modes = []
    for chunk in args.modes.split(","):
        chunk = chunk.strip()
        if chunk:
            modes.append(_parse_mode(chunk))
    out = args.out or _default_out_path("verify_records.jsonl")
    config = SweepConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        M_max=args.m_max,
        modes=tuple(modes),
        lemma_checks=LemmaChecks(),
        worker_count=args.workers,
        output_path=out,
        tree_limit=args.limit,
    )
    report = sweep(config)
    summary = report.summary_dict()
    if args.format == "json":
        print(json.dumps(summary, indent=2))
    else:
        print(f"trees={summary['trees']} specs={summary['specs']} records={summary['records']}")
        print(f"bound violations: {summary['bound']['violations']}")
        print(f"m = p-1 equivalence violations: {summary['pendant_minus_one']['violations']}")
        for mode_value, entry in summary["pendant_minus_two"].items():
            for label, count in entry.items():
                print(f"m = p-2 equivalence ({mode_value}): {count} {label}")
        print(f"records: {report.records_path}")
        print(f"summary: {report.summary_path}")
    return 1 if report.broad_violations else 0


def _cmd_audit(args) -> int:
    report = chebyshev_completeness_audit(
        args.n_max, tree_limit=max(args.n_max, DEFAULT_ENUMERATION_LIMIT)
    )
    payload = {
        "trees_checked": report.trees_checked,
        "flags": report.flags,
        "scope_notes": report.scope_notes,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(f"trees checked: {report.trees_checked}")
        print(f"flags: {len(report.flags)}")
        for flag in report.flags:
            print(f"  {flag['tree']} level={flag['level']} p={flag['p']}")
        print(f"scope notes (p=3, simple non-path eigenvalue): {len(report.scope_notes)}")
        for note in report.scope_notes:
            print(f"  {note['tree']} level={note['level']}")
    return 1 if report.flags else 0


def _cmd_report(args) -> int:
    summary = summarize_records(args.path)
    if args.format == "json":
        print(json.dumps(summary, indent=2))
    else:
        print(f"records: {summary['records']} trees={summary['trees']} specs={summary['specs']}")
        print(f"bound violations: {summary['bound']['violations']}")
        print(f"m = p-1 equivalence violations: {summary['pendant_minus_one']['violations']}")
        for mode_value, entry in summary["pendant_minus_two"].items():
            for label, count in entry.items():
                print(f"m = p-2 equivalence ({mode_value}): {count} {label}")
    broad = (
        summary["bound"]["violations"]
        + summary["pendant_minus_one"]["violations"]
        + summary["pendant_minus_two"].get("broad", {}).get("violations", 0)
    )
    return 1 if broad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treemult",
        description="Exact eigenvalue multiplicities of trees and the "
        "pendant-count families realizing m = p-1 and m = p-2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mult", help="multiplicity m(T, lambda) plus p and gamma")
    _add_tree_source(p)
    p.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True, metavar="i/M")
    _add_format(p)
    p.set_defaults(func=_cmd_mult)

    p = sub.add_parser("charpoly", help="characteristic polynomial coefficients")
    _add_tree_source(p)
    _add_format(p)
    p.set_defaults(func=_cmd_charpoly)

    p = sub.add_parser("classify", help="family membership with witness chain")
    _add_tree_source(p)
    p.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True, metavar="i/M")
    p.add_argument("--mode", type=_parse_mode, default=BROAD)
    _add_format(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("generate", help="stream family members as graph6")
    p.add_argument("--family", choices=("gamma", "gamma2"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_parse_lambda, required=True, metavar="i/M")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--mode", type=_parse_mode, default=BROAD)
    _add_format(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("enumerate", help="stream canonical trees as graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, default=DEFAULT_ENUMERATION_LIMIT,
                   help="enumeration size cap (default 20)")
    _add_format(p)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify", help="run the exhaustive verification sweep")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True, help="largest eigenvalue denominator M")
    p.add_argument("--modes", default="broad", help="comma list: broad,strict")
    p.add_argument("--workers", type=int, default=default_worker_count())
    p.add_argument("--out", help=f"records path (default under ${OUT_DIR_ENV} or .)")
    p.add_argument("--limit", type=int, default=DEFAULT_ENUMERATION_LIMIT,
                   help="enumeration size cap (default 20)")
    _add_format(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("audit", help="flag non-path eigenvalues at high multiplicity")
    p.add_argument("--n-max", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=_cmd_audit)

    p = sub.add_parser("report", help="re-summarize an existing record file")
    p.add_argument("path")
    _add_format(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TreeError, InvalidSpecError, IoFailureError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
