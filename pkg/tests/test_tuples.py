from math import ceil, comb

import pytest
from hypothesis import given, settings, strategies as st

from tnet import (Hypergraph, SpanningCycle, build_Ht, build_Ht_lc,
                  build_spanning_cycle, gamma, vc_dimension)
from tnet.errors import NeedsDedup, TooSmall
from tnet.generators import example_three, interval_hypergraph, random_hypergraph
from tnet.hypergraph import mask_of, members


def test_build_Ht_single_edge():
    T = build_Ht(Hypergraph(4, (15,)), 2)
    assert T.hyper.n == 6
    assert T.hyper.edges == ((1 << 6) - 1,)
    assert [members(b) for b in T.back_map] == [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]


def test_build_Ht_three_vertex_example():
    T = build_Ht(example_three(), 2)
    # tuple-vertices ab, ac, bc in lexicographic order
    assert T.hyper.edges == (0, 0b100, 0b010, 0b111)
    assert T.lift(0b110) == [mask_of([0, 2]), mask_of([1, 2])]


def test_build_Ht_t1_is_dedup_copy():
    H = Hypergraph(4, (3, 5, 3, 0))
    T = build_Ht(H, 1)
    assert T.hyper.edges == H.deduplicated().edges
    assert T.edge_of_base == (0, 1, 0, 2)


@settings(max_examples=25)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=2, max_value=3))
def test_vc_of_Ht_bracket(seed, t):
    H = random_hypergraph(7, 12, seed=seed, density=0.5)
    d = vc_dimension(H)
    dt = vc_dimension(build_Ht(H, t).hyper, guard=None)
    assert d - t + 1 <= dt <= ceil(gamma(t) * d)


def test_interval_identity_cycle_crossings():
    H = interval_hypergraph(10, proper=True)
    cyc = SpanningCycle.from_order(H, range(10))
    assert set(cyc.crossings) == {2}
    assert cyc.max_crossing == 2


def test_three_vertices_one_edge():
    H = Hypergraph(3, (3,))
    cyc = build_spanning_cycle(H)
    assert sorted(cyc.order) == [0, 1, 2]
    assert cyc.crossings == (2,)


def test_spanning_cycle_on_intervals_is_low_crossing():
    H = interval_hypergraph(30)
    cyc = build_spanning_cycle(H, seed=3)
    assert sorted(cyc.order) == list(range(30))
    assert cyc.max_crossing <= 4
    assert len(cyc.tree_edges) == 29


def test_spanning_cycle_deterministic_and_consistent():
    H = random_hypergraph(25, 60, seed=4)
    a = build_spanning_cycle(H, seed=1)
    b = build_spanning_cycle(H, seed=1)
    assert a.order == b.order
    again = SpanningCycle.from_order(H, a.order)
    assert again.crossings == a.crossings
    for e, c in zip(H.edges, a.crossings):
        walk = [(e >> v) & 1 for v in a.order]
        assert c == sum(walk[j] != walk[(j + 1) % 25] for j in range(25))


def test_spanning_cycle_preconditions():
    with pytest.raises(TooSmall):
        build_spanning_cycle(Hypergraph(2, (1,)))
    with pytest.raises(NeedsDedup):
        build_spanning_cycle(Hypergraph(4, (1, 1)))
    with pytest.raises(ValueError):
        SpanningCycle.from_order(Hypergraph(3, ()), [0, 0, 1])


def test_lc_t_equals_n():
    H = Hypergraph(4, (15, 7, 0))
    T = build_Ht_lc(H, 4)
    assert T.hyper.n == 1
    assert T.hyper.edges == (1, 0)


def test_lc_block_counts_on_intervals():
    H = interval_hypergraph(12)
    ident = SpanningCycle.from_order(H, range(12))
    T = build_Ht_lc(H, 2, cycle=ident)
    assert [members(b) for b in T.back_map] == [[2 * k, 2 * k + 1] for k in range(6)]
    for e, j in zip(H.edges, T.edge_of_base):
        L = e.bit_count()
        inside = T.hyper.edges[j].bit_count()
        assert L // 2 - 1 <= inside <= L // 2


def test_lc_drops_leftover_vertices():
    H = interval_hypergraph(7)
    T = build_Ht_lc(H, 3)
    assert T.hyper.n == 2
    assert sum(b.bit_count() for b in T.back_map) == 6
    with pytest.raises(TooSmall):
        build_Ht_lc(Hypergraph(2, (3,)), 3)


def test_build_Ht_guard_counts():
    T = build_Ht(Hypergraph(8, (255,)), 3)
    assert T.hyper.n == comb(8, 3)
