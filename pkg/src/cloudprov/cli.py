"""Command line: ``cloudprov run|compare|oracle SCENARIO``.

Exit codes: 0 success, 1 usage error, 2 scenario parse error, 3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .executor import run
from .model import ExecutionMode, Scenario, ScenarioError
from .oracle import DEFAULT_BUDGET, OracleBudgetExceeded, optimal_assignment
from .policies import POLICIES, TieBreakMode, allocate
from .report import (
    RunReport,
    fmt,
    render_compare_table,
    render_gantt,
    render_run_table,
    reports_to_csv,
    reports_to_json,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_BUDGET = 0, 1, 2, 3

COMPARE_ORDER = ("fcfs", "minmin", "maxmin", "selective")


class UsageError(Exception):
    pass


def parse_scenario(text: str) -> Scenario:
    """Parse a scenario JSON document, e.g.
    ``{"vms": [{"mips": 10}], "cloudlets": [{"file_size": 12}], "hosts": {"count": 2, "ram_mb": 512}}``.
    """
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return Scenario.from_dict(doc)


def run_command(
    scenario: Scenario,
    policy: str,
    mode: str = "space",
    tie_break: str = TieBreakMode.FIRST_INSTANTIATED.value,
) -> RunReport:
    if policy not in POLICIES:
        raise UsageError(f"unknown policy {policy!r}; choose from {', '.join(POLICIES)}")
    try:
        mode_ = ExecutionMode(mode)
        tb = TieBreakMode(tie_break)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    plan = allocate(policy, scenario, tb)
    return RunReport.build(scenario, plan, run(scenario, plan, mode_), policy)


def oracle_report(scenario: Scenario, mode: str = "space", budget: int = DEFAULT_BUDGET) -> RunReport:
    plan, _ = optimal_assignment(scenario, budget)
    return RunReport.build(scenario, plan, run(scenario, plan, ExecutionMode(mode)), "oracle")


def compare_command(
    scenario: Scenario,
    mode: str = "space",
    tie_break: str = TieBreakMode.FIRST_INSTANTIATED.value,
    budget: int = DEFAULT_BUDGET,
) -> list[RunReport]:
    """One report per policy in fixed order, then the oracle row if it fits the budget."""
    reports = [run_command(scenario, p, mode, tie_break) for p in COMPARE_ORDER]
    try:
        reports.append(oracle_report(scenario, mode, budget))
    except OracleBudgetExceeded:
        pass
    return reports


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cloudprov", description="Cloudlet provisioning simulator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("scenario", help="scenario JSON file, or - for stdin")
        p.add_argument("--mode", choices=[m.value for m in ExecutionMode], default="space")
        p.add_argument("--tie-break", choices=[t.value for t in TieBreakMode], default="first")
        p.add_argument("--format", choices=["table", "csv", "json"], default="table")
        p.add_argument("--gantt", action="store_true", help="append an ASCII Gantt chart")
        p.add_argument("--width", type=int, default=60, help="Gantt width in columns")
        p.add_argument("--seed", type=int, default=None, help="reserved; no randomness is used")

    p_run = sub.add_parser("run", help="allocate and execute with one policy")
    common(p_run)
    p_run.add_argument("--policy", choices=list(POLICIES), default="selective")

    p_cmp = sub.add_parser("compare", help="all policies plus the exhaustive optimum")
    common(p_cmp)
    p_cmp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p_orc = sub.add_parser("oracle", help="exhaustive optimal assignment")
    common(p_orc)
    p_orc.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(reports: list[RunReport], fmt_: str, single: bool) -> str:
    if fmt_ == "csv":
        return reports_to_csv(reports)
    if fmt_ == "json":
        return reports_to_json(reports, as_list=not single)
    if single:
        return render_run_table(reports[0])
    return render_compare_table(reports)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        print("cloudprov: error: --seed is reserved; no command uses randomness", file=sys.stderr)
        return EXIT_USAGE
    if args.width < 1:
        print("cloudprov: error: --width must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        scenario = parse_scenario(_read(args.scenario))
    except OSError as exc:
        print(f"cloudprov: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ScenarioError as exc:
        print(f"cloudprov: scenario error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    try:
        if args.command == "run":
            reports = [run_command(scenario, args.policy, args.mode, args.tie_break)]
        elif args.command == "compare":
            reports = compare_command(scenario, args.mode, args.tie_break, args.budget)
        else:
            reports = [oracle_report(scenario, args.mode, args.budget)]
    except UsageError as exc:
        print(f"cloudprov: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleBudgetExceeded as exc:
        print(f"cloudprov: oracle budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET

    out = _emit(reports, args.format, single=args.command != "compare")
    if args.gantt:
        out += "".join("\n" + render_gantt(r, args.width) for r in reports)
    sys.stdout.write(out)
    if args.command == "oracle" and args.format == "table":
        sys.stdout.write(f"optimal makespan: {fmt(reports[0].makespan)}\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
