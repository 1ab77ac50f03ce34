#!/usr/bin/env python3
"""Plot solver trace CSVs (dual vs normalized iterations).

Usage:
    plot_traces.py out.png trace1.csv [trace2.csv ...]

Each input is a trace file written by `minsum solve --trace` or found in a
`minsum compare`/`minsum ablate` output directory. The curve label is the
file stem (e.g. trace_h). Plotting is untested best-effort tooling; all
numeric artifacts come from the CSV/JSON outputs themselves.
"""

import csv
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_trace(path):
    xs, ys = [], []
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            xs.append(float(row["normalized_iterations"]))
            ys.append(float(row["dual"]))
    return xs, ys


def main(argv):
    if len(argv) < 3:
        print(__doc__.strip(), file=sys.stderr)
        return 1
    out, traces = argv[1], argv[2:]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for path in traces:
        xs, ys = read_trace(path)
        ax.plot(xs, ys, label=pathlib.Path(path).stem)
    ax.set_xlabel("normalized iterations (oracle calls / |E|)")
    ax.set_ylabel("dual lower bound")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
