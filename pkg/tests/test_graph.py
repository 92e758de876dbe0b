import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dlogmap.graph import GraphStats, Workspace, analyze, analyze_many, naive_analyze
from dlogmap.numtheory import PrimeContext, build_map, classify_m


@st.composite
def tables(draw, max_n=60):
    n = draw(st.integers(1, max_n))
    return draw(st.lists(st.integers(1, n), min_size=n, max_size=n))


def check_invariants(s: GraphStats):
    assert s.cyclic_nodes + s.tail_nodes == s.n
    assert s.image_nodes + s.terminal_nodes == s.n
    assert 1 <= s.components <= s.cyclic_nodes
    assert s.fixed_points <= s.cyclic_nodes
    assert s.max_cycle <= s.cyclic_nodes
    assert s.sum_cycle_over_nodes <= s.n * s.max_cycle
    assert s.sum_tail_over_nodes <= s.n * s.max_tail


def test_three_node_example():
    s = analyze([2, 3, 2])
    assert s == GraphStats(
        n=3, components=1, cyclic_nodes=2, image_nodes=2, terminal_nodes=1, tail_nodes=1,
        fixed_points=0, sum_cycle_over_nodes=6, sum_tail_over_nodes=1, max_cycle=2, max_tail=1,
    )


def test_powers_of_three_mod_seven():
    s = analyze(build_map(3, PrimeContext.from_prime(7)))
    assert (s.components, s.cyclic_nodes, s.image_nodes) == (4, 6, 6)
    assert s.sum_cycle_over_nodes == 12 and s.avg_cycle == 2
    assert (s.max_cycle, s.max_tail, s.fixed_points) == (3, 0, 3)


def test_powers_of_two_mod_seven():
    s = analyze(build_map(2, PrimeContext.from_prime(7)))
    assert (s.components, s.cyclic_nodes, s.image_nodes, s.terminal_nodes) == (1, 2, 3, 3)
    assert (s.sum_cycle_over_nodes, s.sum_tail_over_nodes, s.avg_tail) == (12, 6, 1)
    assert (s.max_cycle, s.max_tail) == (2, 2)


def test_identity_and_constant():
    ident = naive_analyze(list(range(1, 6)))
    assert (ident.components, ident.cyclic_nodes, ident.max_cycle, ident.fixed_points) == (5, 5, 1, 5)
    const = naive_analyze([1] * 6)
    assert (const.components, const.cyclic_nodes, const.image_nodes) == (1, 1, 1)
    assert (const.max_tail, const.sum_tail_over_nodes) == (1, 5)
    assert analyze(list(range(1, 6))) == ident and analyze([1] * 6) == const


@given(tables())
@settings(max_examples=300)
def test_analyze_matches_naive(table):
    s = analyze(table)
    assert s == naive_analyze(table)
    check_invariants(s)


def test_analyze_matches_naive_thousand_tables():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(1, 200)
        table = [rng.randint(1, n) for _ in range(n)]
        assert analyze(table) == naive_analyze(table)


def test_structured_graphs_match_naive():
    rng = random.Random(11)
    for _ in range(100):
        # a random permutation, then graft random trees onto it
        n = rng.randint(2, 150)
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        k = rng.randint(1, n)
        table = perm[:]
        for x in range(k, n):
            table[x] = rng.randint(1, x)
        assert analyze(table) == naive_analyze(table)


def test_workspace_reuse():
    ws = Workspace(100)
    a = analyze([2, 3, 2], ws)
    b = analyze(list(range(1, 51)), ws)
    c = analyze([2, 3, 2], ws)
    assert a == c and b.fixed_points == 50
    # too-small workspace is replaced, not overrun
    assert analyze(list(range(1, 201)), Workspace(10)).components == 200


def test_analyze_many_rows():
    rows = analyze_many([[2, 3, 2], [1, 1, 1], [1, 2, 3]])
    assert [GraphStats.from_row(r) for r in rows] == [analyze(t) for t in ([2, 3, 2], [1, 1, 1], [1, 2, 3])]


@pytest.mark.parametrize("bad", [[0, 1], [1, 3], [-1]])
def test_rejects_out_of_range(bad):
    with pytest.raises(ValueError):
        analyze(bad)
    with pytest.raises(ValueError):
        naive_analyze(bad)


def test_permutation_and_binary_shapes():
    ctx = PrimeContext.from_prime(211)
    for g in range(1, 211):
        m = classify_m(g, ctx)
        s = analyze(build_map(g, ctx))
        check_invariants(s)
        if m == 1:
            assert (s.cyclic_nodes, s.tail_nodes, s.terminal_nodes, s.max_tail) == (210, 0, 0, 0)
            assert s.sum_tail_over_nodes == 0
        if m == 2:
            assert s.terminal_nodes == s.image_nodes == 105


@pytest.mark.parametrize("p", [211, 2027])
def test_image_nodes_equal_n_over_m(p):
    ctx = PrimeContext.from_prime(p)
    for g in range(1, p):
        assert analyze(build_map(g, ctx)).image_nodes == (p - 1) // classify_m(g, ctx)


@pytest.mark.parametrize("p", [13, 31, 211, 997])
def test_in_degrees_are_zero_or_m(p):
    ctx = PrimeContext.from_prime(p)
    for g in range(1, p):
        indeg = np.bincount(build_map(g, ctx).next, minlength=p)[1:]
        assert set(indeg.tolist()) <= {0, classify_m(g, ctx)}


def test_max_cycle_one_means_only_fixed_points():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(1, 30)
        table = [rng.randint(1, n) for _ in range(n)]
        s = analyze(table)
        assert (s.max_cycle == 1) == (s.fixed_points == s.components)
