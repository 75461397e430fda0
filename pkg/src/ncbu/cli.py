"""Command-line runner: ``ncbu list`` and ``ncbu run``."""

from __future__ import annotations

import argparse
import sys

from .scalars import ConductorOverflow
from .scenarios import SCENARIOS, ScenarioError, emit_report, load_scenario_file, run_scenario

EXIT_OK, EXIT_MISMATCH, EXIT_INFRA = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ncbu", description="Run verification scenarios for twisted joins.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list registered scenarios")
    run = sub.add_parser("run", help="run a scenario and emit a report")
    run.add_argument("name", nargs="?", help="registered scenario name")
    run.add_argument("--file", help="JSON scenario file")
    run.add_argument("--k", type=int, default=None)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--grid", type=int, default=None)
    run.add_argument("--format", choices=["json", "text"], default="text")
    run.add_argument("--out", help="write the report here instead of stdout")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        for name, spec in SCENARIOS.items():
            print(f"{name:<22} {spec.summary}")
        return EXIT_OK
    if bool(args.name) == bool(args.file):
        print("ncbu run: give exactly one of a scenario name or --file", file=sys.stderr)
        return EXIT_INFRA
    overrides = {"k": args.k, "seed": args.seed, "grid": args.grid}
    try:
        data = load_scenario_file(args.file) if args.file else None
        report = run_scenario(args.name, overrides, file_data=data)
        text = emit_report(report, args.format)
    except (ScenarioError, ConductorOverflow) as exc:
        print(f"ncbu: {exc}", file=sys.stderr)
        return EXIT_INFRA
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"ncbu: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_INFRA
    else:
        print(text)
    if report.error:
        print(f"ncbu: scenario raised {report.error}", file=sys.stderr)
        return EXIT_INFRA
    return EXIT_OK if report.passed else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
