"""
Exact expectations from generating functions
============================================

For binary functional graphs the counting series are solved with exact
fractions. Small sizes are then checked against brute force.
"""

import math

from dlogmap.series import (
    binary_graph_count,
    exact_mean,
    exact_mean_max_tail,
    exhaustive_enumerate,
    mary_graph_count,
)

print("binary graphs on n nodes:", [binary_graph_count(n) for n in range(0, 13, 2)])
print("ternary graphs on n nodes:", [mary_graph_count(3, n) for n in range(0, 10, 3)])

# Means are exact rationals.
for n in (2, 4, 6, 8):
    ex = exhaustive_enumerate(n, 2)
    print(n, exact_mean("components", n), ex.mean("components"), exact_mean_max_tail(n), ex.mean("max_tail"))

# Components approach (ln 2n + gamma) / 2 slowly.
gamma = 0.5772156649015329
for n in (50, 100, 200, 400):
    exact = float(exact_mean("components", n))
    print(f"n = {n:4d}  exact {exact:.5f}  limit {(math.log(2 * n) + gamma) / 2:.5f}")
