#!/usr/bin/env python3
"""Run every registered verification suite and write a consolidated report.

Equivalent to `hilbloch verify --suite <id>` over the whole registry.
Prints one agree/disagree line per suite and writes report.md next to this
script unless --out points elsewhere.  Exits 1 if any suite disagrees.
"""

import argparse
import dataclasses
import pathlib
import sys

from hilbloch.reports import write_report
from hilbloch.suites import default_config, list_suites, run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path(__file__).parent)
    parser.add_argument("--scale", type=float, default=1.0, help="resolution multiplier")
    args = parser.parse_args()

    reports = []
    for suite_id in list_suites():
        cfg = default_config(suite_id)
        if args.scale != 1.0:
            cfg = dataclasses.replace(cfg, resolution_scale=args.scale)
        report = run_suite(cfg)
        reports.append(report)
        status = "agree" if report.agreement else "DISAGREE"
        print(f"{suite_id:<8} {status:<9} cases={len(report.cases)}  wall={report.wall_time:.2f}s")

    path = write_report(reports, args.out, "md")
    print(f"\nwrote {path}")
    return 0 if all(r.agreement for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
