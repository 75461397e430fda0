"""Run every registered scenario and print a one-line summary per scenario.

    python scripts/run_all_scenarios.py [--seed S] [--json-dir DIR]
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ncbu.scenarios import emit_report, list_scenarios, run_scenario


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json-dir", type=Path, default=None, help="also write one JSON report per scenario")
    p.add_argument("--verbose", action="store_true", help="print the full text report")
    args = p.parse_args()

    if args.json_dir:
        args.json_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    total = 0.0
    for name in list_scenarios():
        r = run_scenario(name, {"seed": args.seed})
        total += r.wall_clock
        matched = sum(c.matches for c in r.checks)
        tag = "PASS" if r.passed else "FAIL"
        print(f"{tag}  {name:<22} {matched:>3}/{len(r.checks):<3} checks  {r.wall_clock:6.2f}s")
        if args.verbose or not r.passed:
            print(emit_report(r, "text"))
        if args.json_dir:
            (args.json_dir / f"{name}.json").write_text(json.dumps(r.to_json(), indent=2) + "\n")
        failures += not r.passed
    print(f"{len(list_scenarios()) - failures}/{len(list_scenarios())} scenarios pass, {total:.2f}s total")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
