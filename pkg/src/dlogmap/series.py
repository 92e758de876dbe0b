"""Exact EGF coefficients for binary and m-ary functional graphs, plus brute force.

All series carry ``Fraction`` coefficients truncated at a fixed order, so every
finite-n quantity here is an exact rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

import numpy as np

from dlogmap._kernels import STAT_FIELDS
from dlogmap.graph import analyze_many


class PowerSeries:
    """Truncated power series sum_k c_k z^k, k = 0..order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise ValueError("a power series needs at least one coefficient")
        self.coeffs = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, c, order: int) -> "PowerSeries":
        return cls([c], order)

    @classmethod
    def monomial(cls, k: int, order: int, c=1) -> "PowerSeries":
        cs = [0] * (order + 1)
        if k <= order:
            cs[k] = c
        return cls(cs)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"PowerSeries([{head}{', ...' if self.order > 5 else ''}], order={self.order})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(other, self.order)

    def __add__(self, other) -> "PowerSeries":
        other = self._coerce(other)
        n = min(self.order, other.order)
        return PowerSeries([self.coeffs[k] + other.coeffs[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self.coeffs])

    def __sub__(self, other) -> "PowerSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PowerSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PowerSeries":
        if not isinstance(other, PowerSeries):
            c = Fraction(other)
            return PowerSeries([c * a for a in self.coeffs])
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        nz = [i for i in range(n + 1) if a[i]]
        out = [Fraction(0)] * (n + 1)
        for j in range(n + 1):
            bj = b[j]
            if not bj:
                continue
            for i in nz:
                if i + j > n:
                    break
                out[i + j] += a[i] * bj
        return PowerSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PowerSeries":
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        return self * (1 / Fraction(other))

    def __rtruediv__(self, other) -> "PowerSeries":
        return self.reciprocal() * other

    def __pow__(self, k: int) -> "PowerSeries":
        if k < 0:
            return self.reciprocal() ** (-k)
        result = PowerSeries.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by z**k, keeping the order."""
        return PowerSeries([0] * k + list(self.coeffs[: self.order + 1 - k]), self.order)

    def derivative(self) -> "PowerSeries":
        return PowerSeries([k * self.coeffs[k] for k in range(1, self.order + 1)], self.order)

    def integral(self) -> "PowerSeries":
        return PowerSeries([0] + [c / (k + 1) for k, c in enumerate(self.coeffs[:-1])])

    def reciprocal(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, self.order + 1):
            s = sum((a[i] * out[k - i] for i in range(1, k + 1) if a[i]), Fraction(0))
            out.append(-s * inv0)
        return PowerSeries(out)

    def log(self) -> "PowerSeries":
        if self.coeffs[0] != 1:
            raise ValueError("log needs constant term 1")
        return (self.derivative() / self).integral()

    def exp(self) -> "PowerSeries":
        if self.coeffs[0] != 0:
            raise ValueError("exp needs constant term 0")
        # e' = a' e, solved coefficient by coefficient
        da = self.derivative().coeffs
        out = [Fraction(1)]
        for k in range(1, self.order + 1):
            s = sum((da[i] * out[k - 1 - i] for i in range(k) if da[i]), Fraction(0))
            out.append(s / k)
        return PowerSeries(out)

    def sqrt(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] != 1:
            raise ValueError("sqrt needs constant term 1")
        s = [Fraction(1)]
        for k in range(1, self.order + 1):
            acc = sum((s[i] * s[k - i] for i in range(1, k)), Fraction(0))
            s.append((a[k] - acc) / 2)
        return PowerSeries(s)


def z(order: int) -> PowerSeries:
    return PowerSeries.monomial(1, order)


# --------------------------------------------------------------------------
# binary functional graphs


def solve_binary_tree_series(order: int) -> PowerSeries:
    """b(z) with b = z + b(z)^2 z / 2; n! [z^n] b counts labeled binary trees."""
    if order < 1:
        raise ValueError("order must be >= 1")
    b = [Fraction(0)] * (order + 1)
    b[1] = Fraction(1)
    for n in range(2, order + 1):
        # [z^n] z b^2 / 2 = (1/2) sum_{i+j=n-1} b_i b_j
        b[n] = sum((b[i] * b[n - 1 - i] for i in range(1, n - 1)), Fraction(0)) / 2
    return PowerSeries(b)


def bounded_height_tree_series(h: int, order: int) -> PowerSeries:
    """b^[h]: binary trees of height <= h, from b^[0] = z and b^[k+1] = z + z (b^[k])^2 / 2."""
    zz = z(order)
    b = zz
    for _ in range(h):
        b = zz + (b * b).shift(1) * Fraction(1, 2)
    return b


def binary_graph_series(order: int) -> PowerSeries:
    """f(z) = 1 / (1 - z b(z))."""
    b = solve_binary_tree_series(order)
    return (1 - b.shift(1)).reciprocal()


def binary_graph_count(n: int) -> int:
    """Functions on n labeled nodes whose in-degrees are all 0 or 2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n % 2:
        return 0
    if n == 0:
        return 1
    count = math.factorial(n) * binary_graph_series(n)[n]
    assert count.denominator == 1
    return int(count)


def mean_value_series(statistic: str, order: int) -> PowerSeries:
    """Mean-value generating function: d/du of the bivariate GF at u = 1."""
    b = solve_binary_tree_series(order)
    zb = b.shift(1)
    one_minus = 1 - zb
    if statistic == "components":
        f = one_minus.reciprocal()
        return f * f.log()
    if statistic == "cyclic_nodes":
        return zb / (one_minus * one_minus)
    if statistic == "terminal_nodes":
        root = (1 - PowerSeries.monomial(2, order, 2)).sqrt()
        return PowerSeries.monomial(2, order) / (root * root * root)
    raise ValueError(f"no mean-value series for {statistic!r}")


EXACT_MEAN_STATISTICS = ("components", "cyclic_nodes", "terminal_nodes")


def _check_even(n: int) -> None:
    if n < 2 or n % 2:
        raise ValueError(f"binary functional graphs need an even size >= 2, got {n}")


def exact_mean(statistic: str, n: int) -> Fraction:
    """Exact mean of a statistic over all binary functional graphs on n nodes."""
    if statistic not in EXACT_MEAN_STATISTICS:
        raise ValueError(f"statistic must be one of {EXACT_MEAN_STATISTICS}")
    _check_even(n)
    return mean_value_series(statistic, n)[n] / binary_graph_series(n)[n]


def bounded_tail_graph_series(h: int, order: int) -> PowerSeries:
    """f^[h] = 1 / (1 - z b^[h]); counts graphs whose longest tail is <= h + 1 edges."""
    return (1 - bounded_height_tree_series(h, order).shift(1)).reciprocal()


def height_sum(n: int) -> Fraction:
    """sum_{h >= 0} ([z^n] f - [z^n] f^[h]) / [z^n] f, the bounded-height GF sum as written.

    Tree roots hang one edge below the cycle, so this equals mean max tail - 1.
    """
    _check_even(n)
    fn = binary_graph_series(n)[n]
    zz = z(n)
    b = zz
    total = Fraction(0)
    while True:
        fh = (1 - b.shift(1)).reciprocal()[n]
        if fh == fn:
            return total / fn
        total += fn - fh
        b = zz + (b * b).shift(1) * Fraction(1, 2)


def exact_mean_max_tail(n: int) -> Fraction:
    """Exact mean longest tail (in edges) over binary functional graphs on n nodes."""
    return 1 + height_sum(n)


def coefficient_asymptotic(n: int, refined: bool = True) -> float:
    """Singular approximation of [z^n] f for even n, with or without the 1/(4n) correction."""
    lead = 2 ** (n / 2) / math.sqrt(math.pi * n / 2)
    return lead * (4 * n - 1) / (4 * n) if refined else lead


# --------------------------------------------------------------------------
# general m-ary graphs


def mary_series(m: int, order: int) -> tuple[PowerSeries, PowerSeries, PowerSeries]:
    """(t, c, f) for m-ary functional graphs.

    t = z + z t^m / m!, c = log 1/(1 - z t^(m-1)/(m-1)!), f = exp(c).
    """
    if m < 1 or order < 1:
        raise ValueError("need m >= 1 and order >= 1")
    zz = z(order)
    t = zz
    inv_mfact = Fraction(1, math.factorial(m))
    # each pass fixes at least one more coefficient
    for _ in range(order):
        nxt = zz + (t**m).shift(1) * inv_mfact
        if nxt == t:
            break
        t = nxt
    u = (t ** (m - 1)).shift(1) * Fraction(1, math.factorial(m - 1))
    c = -(1 - u).log()
    f = c.exp()
    return t, c, f


def mary_graph_count(m: int, n: int) -> int:
    if n == 0:
        return 1
    count = math.factorial(n) * mary_series(m, n)[2][n]
    assert count.denominator == 1
    return int(count)


# --------------------------------------------------------------------------
# brute force

EXHAUSTIVE_MAX_N = 8


@dataclass(frozen=True)
class ExhaustiveResult:
    """Exact totals and means over every m-ary functional graph on n nodes.

    ``avg_tail`` averages over tail nodes; ``avg_tail_per_node`` over all nodes.
    """

    n: int
    m: int
    count: int
    sums: dict[str, int]

    def mean(self, field: str) -> Fraction:
        if field == "avg_cycle":
            return Fraction(self.sums["sum_cycle_over_nodes"], self.count * self.n)
        if field == "avg_tail_per_node":
            return Fraction(self.sums["sum_tail_over_nodes"], self.count * self.n)
        if field == "avg_tail":
            tails = self.sums["tail_nodes"]
            return Fraction(self.sums["sum_tail_over_nodes"], tails) if tails else Fraction(0)
        return Fraction(self.sums[field], self.count)

    @property
    def means(self) -> dict[str, Fraction]:
        keys = [*STAT_FIELDS, "avg_cycle", "avg_tail", "avg_tail_per_node"]
        return {k: self.mean(k) for k in keys} if self.count else {}


def iter_mary_tables(n: int, m: int) -> Iterator[tuple[int, ...]]:
    """Every 1-based table on n nodes with all in-degrees in {0, m}."""
    if n == 0:
        yield ()
        return
    if n % m:
        return
    k = n // m
    for image in combinations(range(1, n + 1), k):
        table = [0] * n
        load = dict.fromkeys(image, 0)

        def place(x: int):
            if x == n:
                yield tuple(table)
                return
            for y in image:
                if load[y] < m:
                    load[y] += 1
                    table[x] = y
                    yield from place(x + 1)
                    load[y] -= 1

        yield from place(0)


def exhaustive_enumerate(n: int, m: int) -> ExhaustiveResult:
    if not 1 <= n <= EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration supports 1 <= n <= {EXHAUSTIVE_MAX_N}")
    if m < 1:
        raise ValueError("m must be >= 1")
    tables = np.array(list(iter_mary_tables(n, m)), dtype=np.int64).reshape(-1, n)
    rows = analyze_many(tables) if len(tables) else np.zeros((0, len(STAT_FIELDS)), np.int64)
    sums = {name: int(rows[:, i].sum()) for i, name in enumerate(STAT_FIELDS)}
    return ExhaustiveResult(n, m, len(tables), sums)
