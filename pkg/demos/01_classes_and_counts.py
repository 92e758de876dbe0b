"""
Which bases give which graphs
=============================

Every base g mod p gives a map x -> g^x mod p. The in-degree of each node is
0 or m, where m = (p-1)/ord(g). Here we sort the bases of a small prime into
their classes and compare with the totient counts.
"""

from collections import Counter

from dlogmap.numtheory import PrimeContext, classify_m, count_m_ary, multiplicative_order

# A safe prime: p - 1 = 2 * 1013, so almost every graph is a permutation or binary.
ctx = PrimeContext.from_prime(2027)
print(ctx.p, ctx.factors, ctx.divisors)

# Census by multiplicative order. No discrete logs needed.
census = Counter(classify_m(g, ctx) for g in range(1, ctx.p))
for m in ctx.divisors:
    print(f"m = {m:5d}   census {census[m]:5d}   phi((p-1)/m) = {count_m_ary(ctx, m)}")

# The two trivial bases sit in their own classes.
print("g = 1  :", multiplicative_order(1, ctx), classify_m(1, ctx))
print("g = -1 :", multiplicative_order(ctx.p - 1, ctx), classify_m(ctx.p - 1, ctx))

# A prime with a richer p - 1 spreads graphs over many classes.
rich = PrimeContext.from_prime(106261)
print(rich.factors)
print(sorted(rich.class_counts.items())[:8], "...")
