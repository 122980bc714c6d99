"""Volumes against the linear bounds, as a text plot.

Dots are realized ideal polyhedra; the lower line is (V-2) v8/4 and the
improved upper line (V-5) v8/2. The V=9 polyhedron sits on the upper line;
everything larger stays strictly below it.

    python demos/bounds_figure.py [max_v]
"""

import sys

from rightangled.pipeline import census, figure_data

max_v = int(sys.argv[1]) if len(sys.argv) > 1 else 13
_, ms = census("ideal", max_v)
fig = figure_data("ideal", ms, max_v)
lines = {}
for kind, V, val in fig.lines:
    lines.setdefault(V, {})[kind] = val
hi = max(val for _, _, val in fig.lines)
width = 60


def col(x):
    return int(round(x / hi * width))


for V in sorted(lines):
    row = [" "] * (width + 1)
    row[col(lines[V]["lower"])] = "|"
    if "improved_upper" in lines[V]:
        row[col(lines[V]["improved_upper"])] = "|"
    for W, vol in fig.dots:
        if W == V:
            row[col(vol)] = "o"
    vols = sorted(vol for W, vol in fig.dots if W == V)
    span = f"{vols[0]:.3f}..{vols[-1]:.3f}" if vols else "none"
    print(f"V={V:2d} {''.join(row)}  {span}")
