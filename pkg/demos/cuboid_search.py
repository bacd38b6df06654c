"""
Euler bricks and perfect cuboids
================================

A rational point of the box variety with no zero coordinate would be a
perfect cuboid. Search boxes with integer edges up to a bound.
"""

import time

from boxtheta.cuboid import RationalBoxPoint, SearchConfig, candidates_to_csv, classify, run_search, search_list

found, summary = run_search(SearchConfig(1000))
print(summary)
for c in found[:5]:
    print(c.edges, "face diagonals", (c.d12, c.d13, c.d23))

start = time.perf_counter()
perfect = search_list(2000, "perfect")
print(f"perfect cuboids with edges up to 2000: {len(perfect)} ({time.perf_counter() - start:.1f} s)")

# worker count does not change the output
print("1 vs 4 workers identical:", candidates_to_csv(search_list(800), "euler") == candidates_to_csv(search_list(800, workers=4), "euler"))

# every known rational point has a zero coordinate
flat = RationalBoxPoint.from_cuboid(3, 4, 0)
print([str(c) for c in flat.coords], classify(flat))
try:
    RationalBoxPoint.from_cuboid(44, 117, 240)
except ValueError as exc:
    print("not a rational point:", exc)
