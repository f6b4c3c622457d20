"""Regenerate data/mixing_table.csv from the printed g~1/g_e of the mixed F~=1/2 levels.

Usage: python scripts/build_mixing_table.py [--check] [--out PATH]
"""

import argparse
import sys
from pathlib import Path

from h2zeeman.data import PACKAGE_DATA, MIXING_FILE
from h2zeeman.hfs import build_mixing_table
from h2zeeman.reference import mixed_g1_inputs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=PACKAGE_DATA / MIXING_FILE)
    parser.add_argument("--check", action="store_true", help="exit 1 if the file on disk is stale")
    args = parser.parse_args()

    header = "# recovered from printed g~1/g_e (7 digits); F~=3/2 rows are orthogonal complements\n"
    text = header + build_mixing_table(mixed_g1_inputs()).to_csv()
    if args.check:
        current = args.out.read_text(encoding="utf-8") if args.out.exists() else ""
        if current != text:
            print(f"{args.out} is stale", file=sys.stderr)
            return 1
        print(f"{args.out} is up to date")
        return 0
    args.out.write_text(text, encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
