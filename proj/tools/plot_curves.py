#!/usr/bin/env python3
# Copyright (c) 2026 the scenopt developers.
# SPDX-License-Identifier: Apache-2.0
"""Plot a CSV produced by `scenopt bounds-table`, `scenopt fig2`, `scenopt fig4`,
or `scenopt tail --out`.

The first column is the x axis; every remaining column becomes one line.
Empty cells (a bound outside its validity range) are skipped.  Example:

    scenopt fig2 --out fig2.csv
    python3 tools/plot_curves.py fig2.csv --logy -o fig2.png
"""

import argparse
import csv
import sys


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv_path", help="input CSV with a header row")
    parser.add_argument("-o", "--out", default=None, help="output image (default: <csv>.png)")
    parser.add_argument("--logy", action="store_true", help="logarithmic y axis")
    args = parser.parse_args()

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("plot_curves.py: matplotlib is required (pip install matplotlib)", file=sys.stderr)
        return 1

    with open(args.csv_path, newline="") as handle:
        rows = list(csv.reader(handle))
    if len(rows) < 2:
        print("plot_curves.py: no data rows in " + args.csv_path, file=sys.stderr)
        return 1
    header, data = rows[0], rows[1:]

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    x_name = header[0]
    for col in range(1, len(header)):
        xs = [float(r[0]) for r in data if col < len(r) and r[col] != ""]
        ys = [float(r[col]) for r in data if col < len(r) and r[col] != ""]
        if xs:
            ax.plot(xs, ys, label=header[col])
    ax.set_xlabel(x_name)
    if args.logy:
        ax.set_yscale("log")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()

    out = args.out or args.csv_path + ".png"
    fig.savefig(out, dpi=150)
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
