from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from tnet import Hypergraph, dual, induced, is_shattered, shatter_function, trace
from tnet.dims import sauer_bound, vc_dimension
from tnet.errors import NeedsDedup, TooLarge
from tnet.generators import example_three
from tnet.hypergraph import (complete, complete_uniform, heavy_edges,
                             heavy_threshold, mask_of, members)

A, B, C = 1, 2, 4


def families(max_n=5, max_edges=12):
    return st.integers(min_value=0, max_value=max_n).flatmap(
        lambda n: st.lists(st.integers(min_value=0, max_value=(1 << n) - 1),
                           max_size=max_edges, unique=True).map(
            lambda es: Hypergraph(n, tuple(es))))


def test_trace_examples():
    H = example_three()
    assert trace(H, A | B) == {A, B, A | B}
    assert trace(H, 0) == {0}
    K = complete(3)
    assert trace(K, 7) == set(range(8))


def test_is_shattered_examples():
    H = example_three()
    assert not is_shattered(H, A | B)
    assert is_shattered(H, 0)
    assert not is_shattered(Hypergraph(3, ()), 0)
    assert is_shattered(complete(4), 15)


def test_shatter_guard():
    H = Hypergraph(30, (1,))
    with pytest.raises(TooLarge):
        is_shattered(H, (1 << 26) - 1)


def test_dual_examples():
    D = dual(Hypergraph(2, (3,)))
    assert (D.n, D.edges) == (1, (1,))
    D = dual(Hypergraph(2, (1, 2)))
    assert (D.n, sorted(D.edges)) == (2, [1, 2])
    H = example_three()
    D = dual(H)
    assert D.n == 4
    # vertex a lies in edges 0, 2 and 3
    assert mask_of([0, 2, 3]) in D.edges
    with pytest.raises(NeedsDedup):
        dual(Hypergraph(2, (1, 1)))


@given(families())
def test_dual_of_dual_recovers_edges(H):
    H = H.deduplicated()
    if not H.edges:
        return
    D = dual(H)
    DD = dual(D)
    # DD's vertex j is D's edge j, i.e. a class of H-vertices sharing one star
    star = [sum(1 << i for i, e in enumerate(H.edges) if (e >> v) & 1) for v in range(H.n)]
    classes = [[v for v in range(H.n) if star[v] == s] for s in D.edges]
    back = [mask_of(v for j in members(dd) for v in classes[j]) for dd in DD.edges]
    assert back == list(H.edges)


def test_shatter_function_examples():
    assert shatter_function(complete(4), 2) == 4
    assert shatter_function(example_three(), 1) == 2
    assert shatter_function(Hypergraph(5, ()), 3) == 0


@given(families(), st.integers(min_value=0, max_value=5))
def test_shatter_function_monotone_and_sauer(H, m):
    if not H.edges:
        return
    a = shatter_function(H, m)
    b = shatter_function(H, m + 1)
    assert a <= b
    d = vc_dimension(H)
    assert a <= sauer_bound(min(m, H.n), d)


def test_sauer_exhaustive_small():
    for n in range(0, 4):
        subsets = range(1 << n)
        for F in range(1, 1 << (1 << n)):
            H = Hypergraph(n, tuple(s for s in subsets if (F >> s) & 1))
            d = vc_dimension(H)
            for m in range(n + 1):
                assert shatter_function(H, m) <= sauer_bound(m, d)


def test_induced_examples():
    H = example_three()
    sub, vmap = induced(H, B | C)
    assert vmap == (1, 2)
    assert set(sub.deduplicated().edges) == {0, 0b11, 0b10}
    assert sub.labels == ("b", "c")
    same, vmap = induced(H, 7)
    assert same.edges == H.edges and vmap == (0, 1, 2)
    empty, vmap = induced(H, 0)
    assert empty.n == 0 and vmap == ()


def test_heavy_threshold_is_exact():
    assert heavy_threshold(0.3, 10) == 3
    assert heavy_threshold("1/3", 9) == 3
    assert heavy_threshold(0.1, 30) == 3
    H = complete_uniform(5, 2)
    assert heavy_edges(H, 0.4) == list(range(10))
    assert heavy_edges(H, 0.41) == []


def test_bad_edges_rejected():
    with pytest.raises(ValueError):
        Hypergraph(2, (4,))
    with pytest.raises(ValueError):
        Hypergraph(-1, ())


def test_incidence_matches_members():
    H = Hypergraph(11, (0, 1, 1 << 10, 0b10110110101))
    for i, e in enumerate(H.edges):
        assert [v for v in range(11) if H.incidence[i, v]] == members(e)
    assert list(H.sizes) == [0, 1, 1, 7]


def test_max_vertices_env(monkeypatch):
    monkeypatch.setenv("TNET_MAX_VERTICES", "8")
    with pytest.raises(TooLarge):
        Hypergraph(9, ())


def test_complete_uniform():
    H = complete_uniform(5, 3)
    assert H.m == 10 and all(e.bit_count() == 3 for e in H.edges)
    assert sorted(H.edges) == sorted(mask_of(c) for c in combinations(range(5), 3))
