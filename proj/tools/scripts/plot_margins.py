#!/usr/bin/env python3
"""Plot link margins from an hsconv CSV report, one marker per row.

usage: plot_margins.py report.csv [out.png]
Needs matplotlib. Rows with non-numeric margins are skipped.
"""
import csv
import math
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def main(argv):
    if len(argv) < 2:
        sys.exit(__doc__)
    out = argv[2] if len(argv) > 2 else "margins.png"
    labels, margins, colors = [], [], []
    with open(argv[1], newline="") as fh:
        for row in csv.DictReader(fh):
            try:
                m = float(row["margin"])
            except ValueError:
                continue
            if not math.isfinite(m):
                continue
            labels.append(f'{row["scenario_id"]}: {row["label"]}')
            margins.append(m)
            colors.append({"pass": "tab:green", "fail": "tab:red"}.get(row["status"], "tab:gray"))
    fig, ax = plt.subplots(figsize=(8, 0.3 * len(labels) + 1.5))
    ax.barh(range(len(margins)), margins, color=colors)
    ax.set_yticks(range(len(labels)), labels, fontsize=7)
    ax.axvline(0.0, color="black", linewidth=0.8)
    ax.set_xlabel("margin (rhs - lhs)")
    fig.tight_layout()
    fig.savefig(out, dpi=120)


if __name__ == "__main__":
    main(sys.argv)
