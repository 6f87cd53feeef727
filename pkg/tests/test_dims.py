from itertools import combinations
from math import comb

import pytest
from hypothesis import given, strategies as st

from tnet import (Hypergraph, dual_shatter_fit, is_shattered, is_t_shattered,
                  t_vc_dimension, vc_dimension)
from tnet.dims import (dimension_report, dual_shatter_values, largest_t_shattered,
                       shatter_witness_mask)
from tnet.errors import TooLarge
from tnet.generators import example_three, interval_hypergraph
from tnet.geometry import grid, instance
from tnet.hypergraph import complete, mask_of


def brute_t_shattered(H, T, t):
    verts = [v for v in range(H.n) if (T >> v) & 1]
    traces = {e & T for e in H.edges}
    for size in range(len(verts) + 1):
        for sub in combinations(verts, size):
            base = mask_of(sub)
            rest = [v for v in verts if v not in sub]
            if not any(base | mask_of(extra) in traces
                       for r in range(t) for extra in combinations(rest, r)):
                return False
    return True


def brute_t_vc(H, t):
    best = 0
    for k in range(H.n + 1):
        if any(brute_t_shattered(H, mask_of(c), t) for c in combinations(range(H.n), k)):
            best = k
    return best


small_h = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.lists(st.integers(min_value=0, max_value=(1 << n) - 1),
                       min_size=1, max_size=14, unique=True).map(
        lambda es: Hypergraph(n, tuple(es))))


def test_vc_examples():
    assert vc_dimension(example_three()) == 1
    assert vc_dimension(complete(4)) == 4
    assert vc_dimension(Hypergraph(3, (0,))) == 0
    assert vc_dimension(Hypergraph(3, ())) == 0


def test_t_vc_examples():
    H = example_three()
    assert is_t_shattered(H, 0b111, 2)
    assert t_vc_dimension(H, 2) == 3
    assert t_vc_dimension(H, 1) == vc_dimension(H)
    assert is_t_shattered(H, 0, 1)
    assert not is_t_shattered(Hypergraph(3, ()), 0, 2)


def test_grid_halfplanes():
    H = instance(grid(3), "halfplane").hyper
    assert vc_dimension(H) == 3
    assert t_vc_dimension(H, 2) <= 6


@given(small_h, st.integers(min_value=0, max_value=63))
def test_t1_is_plain_shattering(H, T):
    T &= (1 << H.n) - 1
    assert is_t_shattered(H, T, 1) == is_shattered(H, T)


@given(small_h, st.integers(min_value=1, max_value=3))
def test_t_vc_matches_brute_force(H, t):
    assert t_vc_dimension(H, t) == brute_t_vc(H, t)


@given(small_h)
def test_t_vc_monotone_in_t(H):
    values = [t_vc_dimension(H, t) for t in (1, 2, 3)]
    assert values == sorted(values)


def test_witness_is_shattered():
    H = instance(grid(3), "halfplane").hyper
    size, witness = largest_t_shattered(H, 1)
    assert size == len(witness) == 3
    assert is_shattered(H, shatter_witness_mask(H))


def test_guards():
    with pytest.raises(TooLarge):
        vc_dimension(Hypergraph(30, (1,)))
    with pytest.raises(TooLarge):
        t_vc_dimension(Hypergraph(17, (1,)), 2)
    assert largest_t_shattered(Hypergraph(30, (1, 2)), 1, guard=None)[0] == 1


def test_dual_shatter_fit_intervals_linear():
    H = interval_hypergraph(12)
    assert dual_shatter_values(H, 4) == {1: 2, 2: 4, 3: 6, 4: 8}
    C, d_star = dual_shatter_fit(H, 4)
    assert d_star == pytest.approx(1.0, abs=1e-9)
    assert C == pytest.approx(2.0)


def test_dual_shatter_fit_grid_halfplanes_grows_quadratically():
    H = instance(grid(4), "halfplane").hyper
    values = dual_shatter_values(H, 3)
    # m lines in general position cut the plane into 1 + m + C(m, 2) cells
    assert values == {m: 1 + m + comb(m, 2) for m in (1, 2, 3)}
    _, d_line = dual_shatter_fit(interval_hypergraph(12), 3)
    _, d_grid = dual_shatter_fit(H, 3)
    assert d_grid > d_line


def test_dual_shatter_fit_single_edge():
    C, d_star = dual_shatter_fit(Hypergraph(5, (31,)), 4)
    assert (C, d_star) == (1.0, 0.0)


def test_dimension_report():
    rep = dimension_report(example_three(), t_values=(2, 3), m_max=3)
    d = rep.as_dict()
    assert d["vc"] == 1 and d["dual_vc_bound"] == 4
    assert d["t_vc"] == {"2": 3, "3": 3}
    assert "dual_shatter_fit" in d
