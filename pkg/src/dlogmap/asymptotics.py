"""Expected shape statistics of random mappings, permutations and binary graphs."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, fields
from typing import Optional

from scipy import integrate

EULER_GAMMA = 0.5772156649015329
HARMONIC_EXACT_LIMIT = 10**6

MODELS = ("random", "permutation", "binary")


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Prediction:
    """Per-graph expectations for one model at size n; None where undefined."""

    model: str
    n: int
    components: Optional[float] = None
    cyclic_nodes: Optional[float] = None
    tail_nodes: Optional[float] = None
    terminal_nodes: Optional[float] = None
    image_nodes: Optional[float] = None
    avg_cycle: Optional[float] = None
    avg_tail: Optional[float] = None
    max_cycle: Optional[float] = None
    max_tail: Optional[float] = None

    def values(self) -> dict[str, Optional[float]]:
        return {f.name: getattr(self, f.name) for f in fields(self)[2:]}


def exp1(x: float) -> float:
    """Exponential integral E1(x) = int_x^inf e^-u / u du for x > 0."""
    if x <= 0:
        raise ValueError("E1 is defined here for x > 0 only")
    if x <= 1.0:
        total, term, k = 0.0, 1.0, 1
        while True:
            term *= -x / k
            step = term / k
            total += step
            if abs(step) < 1e-17 * abs(total):
                break
            k += 1
        return -EULER_GAMMA - math.log(x) - total
    # modified Lentz on the continued fraction e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h * math.exp(-x)
    raise ConvergenceError(f"E1 continued fraction did not converge at x={x}")


def _largest_cycle_integrand(v: float) -> float:
    if v == 0.0:
        return 1.0
    if v > 700.0:
        return 0.0
    return -math.expm1(-exp1(v))


def golomb_dickman(tolerance: float = 1e-10) -> float:
    """int_0^inf [1 - exp(-E1(v))] dv to absolute accuracy ``tolerance``."""
    if not tolerance >= 1e-10:
        raise ValueError("tolerance must be >= 1e-10")
    return _golomb_dickman(tolerance)


@functools.lru_cache(maxsize=None)
def _golomb_dickman(tolerance: float) -> float:
    eps = tolerance / 10
    total, err = 0.0, 0.0
    for lo, hi in ((0.0, 1.0), (1.0, 10.0), (10.0, math.inf)):
        value, abserr = integrate.quad(
            _largest_cycle_integrand, lo, hi, epsabs=eps, epsrel=0.0, limit=200
        )
        total += value
        err += abserr
    if err > tolerance:
        raise ConvergenceError(f"quadrature error estimate {err:.3g} exceeds {tolerance:.3g}")
    return total


def max_cycle_coefficient() -> float:
    """Largest-cycle constant for mappings and binary graphs, ~0.78248."""
    return math.sqrt(math.pi / 2) * golomb_dickman()


def max_tail_coefficient() -> float:
    return math.sqrt(2 * math.pi) * math.log(2)


BINARY_MAX_TAIL_OFFSET = -3 + 2 * math.log(2)


@functools.lru_cache(maxsize=64)
def harmonic_number(n: int) -> float:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n <= HARMONIC_EXACT_LIMIT:
        return math.fsum(1.0 / i for i in range(1, n + 1))
    return harmonic_asymptotic(n)


def harmonic_asymptotic(n: int) -> float:
    return math.log(n) + EULER_GAMMA + 1 / (2 * n) - 1 / (12 * n * n)


def _components(n: int) -> float:
    return (math.log(2 * n) + EULER_GAMMA) / 2


def predict_random(n: int) -> Prediction:
    if n < 1:
        raise ValueError("n must be >= 1")
    cyclic = math.sqrt(math.pi * n / 2) - 1 / 3
    avg = math.sqrt(math.pi * n / 8)
    return Prediction(
        model="random",
        n=n,
        components=_components(n),
        cyclic_nodes=cyclic,
        tail_nodes=n - cyclic,
        terminal_nodes=n / math.e,
        image_nodes=(1 - 1 / math.e) * n,
        avg_cycle=avg,
        avg_tail=avg,
        max_cycle=max_cycle_coefficient() * math.sqrt(n),
        max_tail=max_tail_coefficient() * math.sqrt(n),
    )


def predict_permutation(n: int) -> Prediction:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Prediction(
        model="permutation",
        n=n,
        components=harmonic_number(n),
        cyclic_nodes=float(n),
        tail_nodes=0.0,
        terminal_nodes=0.0,
        image_nodes=float(n),
        avg_cycle=(n + 1) / 2,
        avg_tail=0.0,
        max_cycle=golomb_dickman() * n,
        max_tail=0.0,
    )


def predict_binary(n: int) -> Prediction:
    if n < 2 or n % 2:
        raise ValueError(f"binary functional graphs need an even size >= 2, got {n}")
    cyclic = math.sqrt(math.pi * n / 2) - 1
    avg = math.sqrt(math.pi * n / 8)
    return Prediction(
        model="binary",
        n=n,
        components=_components(n),
        cyclic_nodes=cyclic,
        tail_nodes=n - cyclic,
        terminal_nodes=n / 2,
        image_nodes=n / 2,
        avg_cycle=avg,
        avg_tail=avg,
        max_cycle=max_cycle_coefficient() * math.sqrt(n),
        max_tail=max_tail_coefficient() * math.sqrt(n) + BINARY_MAX_TAIL_OFFSET,
    )


def predict(model: str, n: int) -> Prediction:
    try:
        fn = {"random": predict_random, "permutation": predict_permutation, "binary": predict_binary}[model]
    except KeyError:
        raise ValueError(f"unknown model {model!r}; expected one of {MODELS}") from None
    return fn(n)


def model_for_class(m: int) -> Optional[str]:
    """Model compared against an m-class; m == 0 means all graphs combined."""
    return {0: "random", 1: "permutation", 2: "binary"}.get(m)
