"""Modular arithmetic, factorization and m-class classification for x -> g^x mod p."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from dlogmap._kernels import fill_powers

MAX_PRIME = 2**31 - 1

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_TRIAL_BOUND = 1 << 16


def mod_pow(base: int, exponent: int, p: int) -> int:
    """Square-and-multiply ``base**exponent % p``."""
    if p < 2:
        raise ValueError(f"modulus must be >= 2, got {p}")
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    result = 1
    base %= p
    while exponent:
        if exponent & 1:
            result = result * base % p
        base = base * base % p
        exponent >>= 1
    return result % p


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    # n is odd and composite here
    for c in range(1, n):
        y, m, r, q, g = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")


def _split(n: int, out: list[int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out.append(n)
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> list[tuple[int, int]]:
    """Ascending ``[(prime, exponent), ...]`` with product ``n``; ``[]`` for 1.

    Trial division up to 2**16, then Miller-Rabin/Pollard-Brent on the cofactor.
    """
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    primes: list[int] = []
    d = 2
    while d * d <= n and d < _TRIAL_BOUND:
        while n % d == 0:
            primes.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if d * d > n:
            primes.append(n)
        else:
            _split(n, primes)
    counts: dict[int, int] = {}
    for q in primes:
        counts[q] = counts.get(q, 0) + 1
    return sorted(counts.items())


def divisors_from_factors(factors: list[tuple[int, int]] | tuple) -> list[int]:
    divs = [1]
    for q, e in factors:
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for q, _ in factorize(n):
        result -= result // q
    return result


@dataclass(frozen=True)
class PrimeContext:
    """A prime modulus together with the divisor lattice of ``p - 1``.

    ``class_counts[m]`` is the number of bases g in 1..p-1 whose graph is m-ary.
    """

    p: int
    factors: tuple[tuple[int, int], ...]
    divisors: tuple[int, ...]
    class_counts: Mapping[int, int] = field(repr=False)

    @classmethod
    def from_prime(cls, p: int) -> "PrimeContext":
        if not 3 <= p <= MAX_PRIME:
            raise ValueError(f"p must lie in [3, 2**31 - 1], got {p}")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        factors = tuple(factorize(p - 1))
        divisors = tuple(divisors_from_factors(factors))
        counts = {m: euler_phi((p - 1) // m) for m in divisors}
        return cls(p, factors, divisors, MappingProxyType(counts))

    @property
    def n(self) -> int:
        return self.p - 1

    def _check_residue(self, g: int) -> None:
        if g % self.p == 0:
            raise ValueError(f"g must be a unit mod {self.p}, got {g}")
        if not 1 <= g <= self.p - 1:
            raise ValueError(f"g must lie in 1..{self.p - 1}, got {g}")


@dataclass(frozen=True, eq=False)
class TransitionMap:
    """The table x -> g^x mod p on {1, ..., p-1}.

    ``next[x - 1]`` holds f(x); the array is read-only.
    """

    p: int
    g: int
    next: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.next[x - 1])

    def __len__(self) -> int:
        return self.p - 1


def multiplicative_order(g: int, ctx: PrimeContext) -> int:
    ctx._check_residue(g)
    k = ctx.p - 1
    for q, _ in ctx.factors:
        while k % q == 0 and pow(g, k // q, ctx.p) == 1:
            k //= q
    return k


def classify_m(g: int, ctx: PrimeContext) -> int:
    """In-degree class m of x -> g^x mod p, i.e. (p-1) / ord(g).

    Same as gcd(a, p-1) for g = r^a with r primitive, without any discrete log.
    """
    return (ctx.p - 1) // multiplicative_order(g, ctx)


def count_m_ary(ctx: PrimeContext, m: int) -> int:
    if m < 1 or (ctx.p - 1) % m:
        raise ValueError(f"{m} does not divide p - 1 = {ctx.p - 1}")
    return ctx.class_counts[m]


def build_map(g: int, ctx: PrimeContext) -> TransitionMap:
    ctx._check_residue(g)
    table = np.empty(ctx.p - 1, dtype=np.int64)
    fill_powers(g, ctx.p, table)
    table.flags.writeable = False
    return TransitionMap(ctx.p, g, table)
