"""Enumerate, realize and tabulate both classes of right-angled polyhedra.

Each row gives the number of combinatorial types with V vertices, the number
of distinct volumes among them and the volume range. A cache directory makes
a second run skip the solver.

    python demos/census.py [ideal_max_v] [compact_max_v]
"""

import sys
import tempfile
import time

from rightangled.pipeline import RealizationCache, census, census_csv, volume_coincidences

ideal_max = int(sys.argv[1]) if len(sys.argv) > 1 else 13
compact_max = int(sys.argv[2]) if len(sys.argv) > 2 else 30

with tempfile.TemporaryDirectory() as root:
    cache = RealizationCache(root)
    for klass, v_max in (("ideal", ideal_max), ("compact", compact_max)):
        t = time.perf_counter()
        rows, ms = census(klass, v_max, cache=cache)
        print(f"# {klass}, V <= {v_max}: {len(ms)} polyhedra in {time.perf_counter() - t:.1f}s")
        print(census_csv(rows), end="")
        pairs = volume_coincidences(ms)
        print(f"# {len(pairs)} pairs of distinct polyhedra share a volume\n")
    t = time.perf_counter()
    census("ideal", ideal_max, cache=cache)
    print(f"warm-cache ideal rerun: {time.perf_counter() - t:.1f}s")
