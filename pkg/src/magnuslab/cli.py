"""Command-line entry point: run verification checks and print reports.

Every subcommand runs one check, prints its report in the requested format
and exits 0 exactly when all rows pass.  Heavy parameter ranges are fenced
behind --opt-in-heavy; soft limits print a warning to stderr first.
"""

from __future__ import annotations

import argparse
import sys

from . import checks

__all__ = ["build_parser", "main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="magnuslab",
        description="Exact checks on free Lie algebras, Magnus expansions and McCool gradings.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=None, metavar="c",
                        help="largest degree to check (per-command default)")
    common.add_argument("--truncation", type=int, default=None, metavar="D",
                        help="series truncation order (per-command default)")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table",
                        help="output format (default table)")
    common.add_argument("--parallel", type=int, default=1, metavar="k",
                        help="worker processes (default 1)")
    common.add_argument("--opt-in-heavy", action="store_true",
                        help="allow parameter ranges that take many minutes")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("theorem1", parents=[common],
                   help="graded quotient splits as two Witt-rank summands")
    sub.add_parser("r-terms", parents=[common],
                   help="relator leading terms match the ideal generators")
    p = sub.add_parser("verify-mccool", parents=[common],
                       help="defining relators evaluate to the identity")
    p.add_argument("--n", type=int, default=3, choices=(2, 3, 4), help="free group rank")
    sub.add_parser("pr4", parents=[common],
                   help="graded pieces of H and the inners meet in zero")
    sub.add_parser("bounds", parents=[common],
                   help="Witt lower bounds for the McCool graded pieces")
    sub.add_parser("re3", parents=[common],
                   help="explicit commutator bases for the free subgroup H")
    sub.add_parser("witt", parents=[common],
                   help="Witt formula against direct Lyndon enumeration")
    p = sub.add_parser("johnson-depth", parents=[common],
                       help="Johnson depth and leading image of a word")
    p.add_argument("word", help="generator word, e.g. 'chi21 chi12^-1' or 'b1 b2'")
    p.add_argument("--n", type=int, default=3, help="free group rank (default 3)")
    return parser


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _run(args: argparse.Namespace) -> checks.CheckReport:
    cmd = args.command
    if cmd == "theorem1":
        cmax = args.max_degree if args.max_degree is not None else 5
        if cmax >= 6 and args.opt_in_heavy:
            _warn(f"theorem1 at degree {cmax} can take several minutes per degree")
        return checks.check_theorem1(
            max_degree=cmax, workers=args.parallel, opt_in_heavy=args.opt_in_heavy
        )
    if cmd == "r-terms":
        return checks.check_r_terms()
    if cmd == "verify-mccool":
        trunc = args.truncation if args.truncation is not None else 8
        if trunc > 8:
            _warn(f"truncation {trunc} grows series quickly in rank {args.n}")
        return checks.check_verify_mccool(n=args.n, trunc=trunc, workers=args.parallel)
    if cmd == "pr4":
        cmax = args.max_degree if args.max_degree is not None else 4
        if cmax > 4 and not args.opt_in_heavy:
            raise ValueError("pr4 above degree 4 is heavy; pass --opt-in-heavy")
        return checks.check_pr4(max_degree=cmax, trunc=args.truncation, workers=args.parallel)
    if cmd == "bounds":
        cmax = args.max_degree if args.max_degree is not None else 4
        if cmax > 4 and not args.opt_in_heavy:
            raise ValueError("bounds above degree 4 is heavy; pass --opt-in-heavy")
        return checks.check_bounds(max_degree=cmax, trunc=args.truncation, workers=args.parallel)
    if cmd == "re3":
        cmax = args.max_degree if args.max_degree is not None else 4
        if cmax > 4 and not args.opt_in_heavy:
            raise ValueError("re3 above degree 4 is heavy; pass --opt-in-heavy")
        return checks.check_re3(max_degree=cmax, trunc=args.truncation, workers=args.parallel)
    if cmd == "witt":
        cmax = args.max_degree if args.max_degree is not None else 8
        return checks.check_witt(max_degree=cmax)
    if cmd == "johnson-depth":
        trunc = args.truncation if args.truncation is not None else 8
        return checks.check_johnson_depth(args.word, n=args.n, trunc=trunc)
    raise ValueError(f"unknown command {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = _run(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(report.to_json())
    elif args.format == "csv":
        print(report.render_csv(), end="")
    else:
        print(report.render_table())
    return 0 if report.all_pass else 1


if __name__ == "__main__":
    sys.exit(main())
