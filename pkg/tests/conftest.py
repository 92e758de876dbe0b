import os
from pathlib import Path

import pytest

from dlogmap.sweep import run_sweep

CACHE_DIR = Path(os.environ.get("DLOGMAP_TEST_CACHE", Path(__file__).resolve().parent.parent / ".sweep-cache"))


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", help="run the full-scale sweeps of the three large primes")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="full-scale sweep; pass --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def full_sweep():
    """Full sweeps, memoised per session and resumable across sessions via checkpoints."""
    done = {}

    def get(p):
        if p not in done:
            CACHE_DIR.mkdir(parents=True, exist_ok=True)
            done[p] = run_sweep(p, checkpoint_path=CACHE_DIR / f"sweep-{p}.json")
        return done[p]

    return get


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.skipped and not rep.failed):
        return
    status = "SKIP" if rep.skipped else ("FAIL" if rep.failed else "PASS")
    item.config._criteria.setdefault(mark.args[0], {})[item.name] = status


def pytest_terminal_summary(terminalreporter, config):
    criteria = getattr(config, "_criteria", {})
    if not criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(criteria):
        results = criteria[n]
        statuses = set(results.values())
        overall = "FAIL" if "FAIL" in statuses else ("SKIP" if "SKIP" in statuses else "PASS")
        failed = [name for name, s in results.items() if s == "FAIL"]
        detail = f" (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {n}: {overall} [{len(results)} checks]{detail}")
