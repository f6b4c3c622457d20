"""Regenerate all five tables, diff them against the printed values and write a summary.

Usage: python3 scripts/reproduce_all.py [--out DIR]

Writes one CSV per table (computed rows) plus diff.csv with every compared cell.
Exits 2 if any cell is outside its tolerance.
"""

import argparse
import csv
import sys
from pathlib import Path

from h2zeeman.reproduce import TABLES, Context, reproduce


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("results"))
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    ctx = Context.default()
    failures = 0
    with (args.out / "diff.csv").open("w", newline="") as fh:
        diff = csv.writer(fh)
        diff.writerow(["table", "row", "column", "computed", "printed", "delta", "tolerance", "ok"])
        for n in TABLES:
            report = reproduce(n, ctx)
            with (args.out / f"table{n}.csv").open("w", newline="") as tf:
                w = csv.writer(tf)
                w.writerow(report.columns)
                w.writerows(report.rows)
            for c in report.cells:
                diff.writerow([n, c.row, c.column, c.computed, c.printed, c.delta, c.tolerance, c.ok])
            bad = report.failures
            failures += len(bad)
            print(f"table {n}: {len(report.cells) - len(bad)}/{len(report.cells)} cells within tolerance")
            for c in bad:
                print(f"    {c.row} [{c.column}]: {c.computed} vs {c.printed}")
    print(f"wrote {args.out}/")
    return 2 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
