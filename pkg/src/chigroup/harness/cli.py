"""Command line interface.

Exit codes: 0 all claims pass, 1 some claim fails, 2 usage error, 3 budget
exhausted with no failures.
"""

from __future__ import annotations

import argparse
import os
import sys

from ..enumerator import DEFAULT_LIMIT, EnumerationLimitExceeded
from ..permsys import ThresholdExceeded, abelian_invariants
from ..weakcomm import BudgetExceeded, build_chi, build_nu, model_group, schur_multiplier
from ..weakcomm.chi import emit_presentation as emit_chi
from ..weakcomm.nu import emit_presentation as emit_nu
from ..words import PresentationSyntaxError, parse_presentation
from .catalog import catalog, lookup
from .reporting import FORMATS, report_emit
from .suites import SUITE_IDS, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(source: str, budget: int):
    """A catalog key or a path to a presentation file."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
        try:
            p = parse_presentation(text)
        except PresentationSyntaxError as exc:
            raise UsageError(f"{source}: {exc}") from None
        return model_group(p, budget, os.path.basename(source))
    try:
        entry = lookup(source)
    except KeyError as exc:
        raise UsageError(f"{exc.args[0]} (and no such file)") from None
    return model_group(entry.presentation, budget, entry.key)


def cmd_build(args) -> int:
    m = _load(args.source, args.budget_cosets)
    print(f"order {m.order}")
    print(f"elements {len(m.words)}")
    print(f"abelianization {abelian_invariants(m.group)}")
    return EXIT_OK


def cmd_chi(args) -> int:
    m = _load(args.source, args.budget_cosets)
    c = build_chi(m, args.budget_cosets)
    if args.emit_presentation:
        sys.stdout.write(emit_chi(c))
        return EXIT_OK
    print(f"|H| = {m.order}")
    print(f"|chi(H)| = {c.order}")
    if args.subgroups:
        for name, S in c.subgroups().items():
            print(f"|{name}| = {S.order()}")
    return EXIT_OK


def cmd_nu(args) -> int:
    m = _load(args.source, args.budget_cosets)
    n = build_nu(m, args.budget_cosets)
    if args.emit_presentation:
        sys.stdout.write(emit_nu(n))
        return EXIT_OK
    print(f"|H| = {m.order}")
    print(f"|nu(H)| = {n.order}")
    for name, S in n.subgroups().items():
        print(f"|{name}| = {S.order()}")
    print(f"tau(H) abelianization {abelian_invariants(n.tau)}")
    return EXIT_OK


def cmd_schur(args) -> int:
    m = _load(args.source, args.budget_cosets)
    s = schur_multiplier(build_chi(m, args.budget_cosets), build_nu(m, args.budget_cosets))
    print(f"W/R       {s.via_chi}")
    print(f"J/Delta   {s.via_nu}")
    print(f"agree     {'yes' if s.agree else 'no'}")
    return EXIT_OK if s.agree else EXIT_FAIL


def cmd_verify(args) -> int:
    select = None
    if args.select:
        select = [k.strip() for k in args.select.split(",") if k.strip()]
        for k in select:
            try:
                lookup(k)
            except KeyError as exc:
                raise UsageError(exc.args[0]) from None
    report = run_suite(args.suite, select, args.budget_cosets, timings=args.timings)
    text = report_emit(report, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_status


def cmd_catalog(args) -> int:
    for e in catalog():
        exp = ", ".join(f"{k}={v.value} [{v.basis}]" for k, v in e.expected.items())
        print(f"{e.key:10s} {e.description}")
        if exp:
            print(f"{'':10s} {exp}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chigroup", description="Weak commutativity groups chi(H) and nu(H).")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_budget(p):
        p.add_argument("--budget-cosets", type=int, default=DEFAULT_LIMIT, metavar="N",
                       help=f"coset enumeration limit (default {DEFAULT_LIMIT})")

    p = sub.add_parser("build", help="enumerate a group and print its order")
    p.add_argument("source", help="catalog key or presentation file")
    add_budget(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("chi", help="build chi(H)")
    p.add_argument("source")
    p.add_argument("--emit-presentation", action="store_true", help="print the presentation of chi(H)")
    p.add_argument("--subgroups", action="store_true", help="print orders of the canonical subgroups")
    add_budget(p)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("nu", help="build nu(H)")
    p.add_argument("source")
    p.add_argument("--emit-presentation", action="store_true")
    add_budget(p)
    p.set_defaults(func=cmd_nu)

    p = sub.add_parser("schur", help="Schur multiplier as W/R and as J/Delta")
    p.add_argument("source")
    add_budget(p)
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITE_IDS)
    p.add_argument("--select", help="comma-separated catalog keys")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out", help="write the report to FILE")
    p.add_argument("--timings", action="store_true", help="include wall times (makes output nondeterministic)")
    add_budget(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="catalog operations")
    p.add_argument("action", choices=["list"])
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "budget_cosets", 1) < 1:
        print("error: --budget-cosets must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EnumerationLimitExceeded, ThresholdExceeded, BudgetExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
