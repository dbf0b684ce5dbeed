#!/usr/bin/env python3
"""Write the d=1 and d=2 bound tables as CSV.

Output is byte-deterministic; re-running overwrites in place.
"""

import argparse
import pathlib
import sys

from rieszlab import figure_tables, table_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="out", help="directory for the CSV files")
    args = parser.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for dim in (1, 2):
        path = outdir / f"bounds_d{dim}.csv"
        path.write_text(table_csv(figure_tables(dim)), encoding="utf-8", newline="")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
