from itertools import combinations
from math import comb

import pytest

from tnet import (Hypergraph, check_turan_identity, min_net_complete,
                  rainbow_pair_coloring, turan_exact, verify_rainbow)
from tnet.applications import PairColoring, mantel
from tnet.errors import TooLarge, TooSmall
from tnet.generators import disjoint_blocks, random_hypergraph
from tnet.hypergraph import mask_of


def brute_turan(n, k, t):
    tsets = list(combinations(range(n), t))
    ksets = [set(combinations(K, t)) for K in combinations(range(n), k)]
    best = 0
    for F in range(1 << len(tsets)):
        chosen = {s for j, s in enumerate(tsets) if (F >> j) & 1}
        if len(chosen) > best and not any(K <= chosen for K in ksets):
            best = len(chosen)
    return best


def test_turan_examples():
    assert turan_exact(4, 3, 2) == 4
    assert turan_exact(6, 3, 2) == 9
    for n, t in ((4, 2), (5, 3), (6, 2)):
        assert turan_exact(n, n, t) == comb(n, t) - 1


@pytest.mark.parametrize("n,k,t", [(4, 3, 2), (5, 3, 2), (5, 4, 2), (5, 4, 3), (6, 3, 2)])
def test_turan_matches_brute_force(n, k, t):
    assert turan_exact(n, k, t) == brute_turan(n, k, t)


def test_min_net_complete_examples():
    assert min_net_complete(4, 3, 2) == 2
    assert min_net_complete(6, 3, 2) == 6
    for n, t in ((4, 2), (5, 3)):
        assert min_net_complete(n, n, t) == 1


def test_identity_examples():
    r = check_turan_identity(4, 3, 2)
    assert (r.turan_number, r.min_net_size, r.identity_holds) == (4, 2, True)
    r = check_turan_identity(6, 3, 2)
    assert (r.turan_number, r.min_net_size, r.identity_holds) == (9, 6, True)
    assert check_turan_identity(7, 4, 3).identity_holds


def test_mantel():
    for n in range(3, 9):
        assert turan_exact(n, 3, 2) == mantel(n)


def test_turan_guards():
    with pytest.raises(TooLarge):
        turan_exact(10, 4, 3)
    with pytest.raises(ValueError):
        turan_exact(3, 4, 2)


def test_rainbow_single_edge():
    H = Hypergraph(10, ((1 << 10) - 1,))
    col = rainbow_pair_coloring(H, 1)
    assert verify_rainbow(H, 1, col)
    assert len(col.colors) == comb(10, 2)
    assert col.num_colors >= 2


def test_rainbow_disjoint_edges():
    H = disjoint_blocks(3, 8)
    col = rainbow_pair_coloring(H, "1/3")
    assert verify_rainbow(H, "1/3", col)


def test_rainbow_random():
    for seed in range(5):
        H = random_hypergraph(40, 120, seed=seed, density=0.5)
        col = rainbow_pair_coloring(H, "2/5", seed=seed)
        assert verify_rainbow(H, "2/5", col)


def test_verify_rainbow_detects_missing_color():
    H = Hypergraph(4, (0b0111, 0b1110))
    pairs = [mask_of(p) for p in combinations(range(4), 2)]
    one = PairColoring(4, {p: 0 for p in pairs}, 1)
    assert verify_rainbow(H, "3/4", one)
    bad = PairColoring(4, {p: (1 if p == 0b1100 else 0) for p in pairs}, 2)
    assert not verify_rainbow(H, "3/4", bad)


def test_rainbow_too_small():
    with pytest.raises(TooSmall):
        rainbow_pair_coloring(Hypergraph(4, (15,)), "1/2")
    with pytest.raises(TooSmall):
        rainbow_pair_coloring(Hypergraph(10, (3,)), 1)
