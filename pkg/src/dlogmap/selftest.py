"""Oracle self-checks runnable outside pytest (``dlogmap selftest``)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from dlogmap import asymptotics, series
from dlogmap.graph import analyze, naive_analyze

# OEIS A084945
GOLOMB_DICKMAN_REFERENCE = 0.6243299885435508


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _engine_vs_naive(trials: int = 300, seed: int = 20240101) -> str:
    rng = random.Random(seed)
    for _ in range(trials):
        n = rng.randint(1, 120)
        table = [rng.randint(1, n) for _ in range(n)]
        fast, slow = analyze(table), naive_analyze(table)
        if fast != slow:
            raise AssertionError(f"analyze != naive_analyze on {table}: {fast} vs {slow}")
    return f"{trials} random tables agree"


def _series_vs_exhaustive() -> str:
    ex = series.exhaustive_enumerate(4, 2)
    if not ex.count == 36 == series.binary_graph_count(4):
        raise AssertionError(f"exhaustive count {ex.count} vs series {series.binary_graph_count(4)}")
    for n in (2, 4, 6):
        ex = series.exhaustive_enumerate(n, 2)
        for stat in series.EXACT_MEAN_STATISTICS:
            if series.exact_mean(stat, n) != ex.mean(stat):
                raise AssertionError(f"exact_mean({stat}, {n}) != exhaustive {ex.mean(stat)}")
        if series.exact_mean_max_tail(n) != ex.mean("max_tail"):
            raise AssertionError(f"exact_mean_max_tail({n}) != exhaustive {ex.mean('max_tail')}")
    return "binary counts and means match enumeration for n <= 6"


def _permutations_exact() -> str:
    for n in range(1, 7):
        ex = series.exhaustive_enumerate(n, 1)
        h = sum(Fraction(1, i) for i in range(1, n + 1))
        if ex.mean("components") != h or ex.mean("avg_cycle") != Fraction(n + 1, 2):
            raise AssertionError(f"permutation means wrong at n={n}")
    return "permutation means equal H_n and (n+1)/2 for n <= 6"


def _constants() -> str:
    lam = asymptotics.golomb_dickman(1e-10)
    if abs(lam - GOLOMB_DICKMAN_REFERENCE) > 1e-9:
        raise AssertionError(f"golomb_dickman = {lam!r}")
    if abs(asymptotics.max_cycle_coefficient() - 0.78248) > 5e-5:
        raise AssertionError("max cycle coefficient")
    if abs(asymptotics.max_tail_coefficient() - 1.73746) > 5e-5:
        raise AssertionError("max tail coefficient")
    return f"lambda = {lam:.10f}"


def _sweep_2027() -> str:
    from dlogmap.sweep import run_sweep

    res = run_sweep(2027, workers=1)
    if res.classes[1].graph_count != 1012 or res.classes[2].graph_count != 1012:
        raise AssertionError("class sizes for p=2027")
    h = asymptotics.harmonic_number(2026)
    comp = float(res.classes[1].mean("components"))
    if abs(comp - h) > 0.10 * h:
        raise AssertionError(f"permutation components {comp} vs H_2026 = {h}")
    pred = asymptotics.predict_binary(2026)
    for name in ("components", "cyclic_nodes", "avg_cycle", "avg_tail"):
        obs = float(res.classes[2].mean(name))
        want = getattr(pred, name)
        if abs(obs - want) > 0.10 * want:
            raise AssertionError(f"binary {name}: {obs} vs predicted {want}")
    return "p=2027 class means within 10% of predictions"


QUICK: list[tuple[str, Callable[[], str]]] = [
    ("engine vs naive oracle", _engine_vs_naive),
    ("series vs exhaustive", _series_vs_exhaustive),
    ("permutation exact means", _permutations_exact),
    ("integral constants", _constants),
]
FULL = QUICK + [("sweep p=2027", _sweep_2027)]


def selftest(level: str = "quick") -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    results = []
    for name, check in QUICK if level == "quick" else FULL:
        try:
            results.append(CheckResult(name, True, check()))
        except Exception as exc:  # report every failure, keep going
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results

