#!/usr/bin/env python3
"""Recompute the embedded SL2/SL3 reference tables and print a report.

Usage: python3 scripts/verify_tables.py [--suite sl2|sl3|all]
Exit code 0 if every identity verifies, 1 otherwise.
"""

import argparse
import sys
import time

from kschubert.constants import verify_embedded_tables


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--suite", choices=["sl2", "sl3", "all"], default="all")
    args = parser.parse_args()

    start = time.monotonic()
    report = verify_embedded_tables(args.suite)
    elapsed = time.monotonic() - start

    width = max(len(r.identity) for r in report.records)
    for record in report.records:
        status = "ok" if record.ok else "FAIL"
        line = f"  {record.identity:<{width}}  {status}"
        if record.detail:
            line += f"  ({record.detail})"
        print(line)
    good = sum(1 for r in report.records if r.ok)
    print(f"{good}/{len(report.records)} identities verified in {elapsed:.2f} s")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
