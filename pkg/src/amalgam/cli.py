"""Command-line interface: element arithmetic and verification suites.

Exit codes: 0 when everything passed, 1 when any check failed, 2 for
unusable input or configuration (bad grammar, bad flags, bad primes).
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .grammar import parse_element
from .primes import PrimeSeq
from .suites import SUITE_NAMES, Report, SuiteConfig, run_suite
from .words import Tower

__all__ = ["build_parser", "main"]


def build_parser() -> argparse.ArgumentParser:
    primes_parent = argparse.ArgumentParser(add_help=False)
    primes_parent.add_argument(
        "--primes",
        default=argparse.SUPPRESS,
        help="comma-separated configured primes, e.g. 2,3,5 (default: first 16)",
    )
    parser = argparse.ArgumentParser(
        prog="amalgam",
        description="Exact arithmetic and verification for an inductive amalgam tower.",
    )
    parser.add_argument("--primes", default=None, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    elem = sub.add_parser("elem", help="element arithmetic in the grammar")
    elem_sub = elem.add_subparsers(dest="op", required=True)
    p_reduce = elem_sub.add_parser(
        "reduce", parents=[primes_parent], help="parse and print the reduced element"
    )
    p_reduce.add_argument("element")
    p_mul = elem_sub.add_parser("mul", parents=[primes_parent], help="product of two elements")
    p_mul.add_argument("left")
    p_mul.add_argument("right")
    p_inv = elem_sub.add_parser("inv", parents=[primes_parent], help="inverse of an element")
    p_inv.add_argument("element")
    p_conj = elem_sub.add_parser(
        "conj", parents=[primes_parent], help="conjugate of the first element by the second"
    )
    p_conj.add_argument("element")
    p_conj.add_argument("conjugator")
    p_member = elem_sub.add_parser(
        "member", parents=[primes_parent], help="membership in K, K<N>, Lambda, or G<N>"
    )
    p_member.add_argument("element")
    p_member.add_argument("subgroup")

    verify = sub.add_parser("verify", parents=[primes_parent], help="run a verification suite")
    verify.add_argument("suite", choices=SUITE_NAMES + ("all",))
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--tolerance", type=float, default=1e-9)
    verify.add_argument("--radius", type=int, default=3)
    verify.add_argument("--level", type=int, default=3)
    verify.add_argument("--samples", type=int, default=None)
    verify.add_argument("--size-guard", type=int, default=None, dest="size_guard")
    verify.add_argument(
        "--out",
        default=None,
        help="report destination: a file for one suite, a directory for 'all'",
    )
    return parser


def _tower(args) -> Tower:
    primes = PrimeSeq.parse(args.primes) if args.primes else PrimeSeq.default()
    return Tower(primes)


def _run_elem(args) -> int:
    tower = _tower(args)
    if args.op == "reduce":
        print(parse_element(tower, args.element).format())
    elif args.op == "mul":
        a = parse_element(tower, args.left)
        b = parse_element(tower, args.right)
        print(tower.mul(a, b).format())
    elif args.op == "inv":
        print(tower.inv(parse_element(tower, args.element)).format())
    elif args.op == "conj":
        g = parse_element(tower, args.element)
        h = parse_element(tower, args.conjugator)
        print(tower.conj(g, h).format())
    elif args.op == "member":
        w = parse_element(tower, args.element)
        print("true" if tower.membership(w, args.subgroup) else "false")
    return 0


def _write_report(report: Report, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.to_json())


def _run_verify(args) -> int:
    kwargs = {
        "primes": PrimeSeq.parse(args.primes) if args.primes else PrimeSeq.default(),
        "seed": args.seed,
        "tolerance": args.tolerance,
        "radius": args.radius,
        "level": args.level,
        "samples": args.samples,
    }
    if args.size_guard is not None:
        kwargs["size_guard"] = args.size_guard
    config = SuiteConfig(**kwargs)
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    reports = [run_suite(name, config) for name in names]
    if args.out is not None:
        out = Path(args.out)
        if args.suite == "all":
            out.mkdir(parents=True, exist_ok=True)
            for report in reports:
                _write_report(report, out / f"{report.suite}.json")
        elif out.is_dir():
            _write_report(reports[0], out / f"{reports[0].suite}.json")
        else:
            _write_report(reports[0], out)
    for report in reports:
        for line in report.summary_lines():
            print(line)
    passed = all(report.passed for report in reports)
    counts = {"pass": 0, "fail": 0, "skip": 0}
    for report in reports:
        for key, value in report.counts.items():
            counts[key] += value
    print(
        f"{'PASS' if passed else 'FAIL'}: "
        f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped"
    )
    return 0 if passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "elem":
            return _run_elem(args)
        return _run_verify(args)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
