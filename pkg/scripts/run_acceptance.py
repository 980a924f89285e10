#!/usr/bin/env python3
"""Run acceptance criteria 1-9 outside pytest and print one line per criterion.

    python3 scripts/run_acceptance.py [--seed S] [--only 2 7] [--json report.json]

Exit status is 0 when every selected criterion passes, 1 otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time

from gjtrig import suites

TIME_LIMIT_S = {1: 10, 2: 10, 3: 30, 4: 60, 5: 10, 6: 20, 7: 30, 8: 60, 9: 5}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--only", type=int, nargs="*", default=None, help="criterion numbers to run")
    ap.add_argument("--json", default=None, help="also write the combined JSON report here")
    args = ap.parse_args(argv)

    chosen = sorted(args.only) if args.only else sorted(suites.CRITERIA)
    all_reports, ok_all = [], True
    for c in chosen:
        t0 = time.perf_counter()
        reports = [suites.run_suite(name, seed=args.seed) for name in suites.CRITERIA[c]]
        dt = time.perf_counter() - t0
        bad = [f"{r.suite}.{k}" for r in reports for k in r.failures]
        ok = not bad and dt <= TIME_LIMIT_S[c]
        ok_all &= ok
        all_reports += reports
        extra = f"  failed: {', '.join(bad)}" if bad else ""
        print(f"criterion {c}: {'PASS' if ok else 'FAIL'}  {dt:6.1f}s / {TIME_LIMIT_S[c]}s{extra}", flush=True)
    if args.json:
        with open(args.json, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(suites.report_json(all_reports))
    return 0 if ok_all else 1


if __name__ == "__main__":
    sys.exit(main())
