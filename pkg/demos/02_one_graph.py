"""
Anatomy of a single graph
=========================
"""

import numpy as np

from dlogmap.graph import analyze, naive_analyze
from dlogmap.numtheory import PrimeContext, build_map, classify_m

ctx = PrimeContext.from_prime(211)

# g = 4 is a square, so every image node has exactly two preimages.
tm = build_map(4, ctx)
print("m =", classify_m(4, ctx))
print("first few arrows:", [(x, tm(x)) for x in range(1, 8)])

stats = analyze(tm)
print(stats)
print("avg cycle per node %.3f, avg tail per node %.3f" % (stats.avg_cycle, stats.avg_tail))

# The peel-and-walk engine agrees with a plain rho walk from every node.
assert stats == naive_analyze(list(tm.next))

# In-degrees are all 0 or m.
indeg = np.bincount(tm.next, minlength=ctx.p)[1:]
print("in-degrees seen:", sorted(set(indeg.tolist())))

# Any table of values in 1..n works, not just modular maps.
print(analyze([2, 3, 1, 1, 4]))
