from itertools import combinations
from math import comb

import numpy as np
import pytest

from tnet import _accel, kernels


def _random_inc(rng, rows, cols, p=0.4):
    return (rng.random((rows, cols)) < p).astype(np.uint8)


def _trace_size(inc, cand):
    return len({tuple(row[list(cand)]) for row in inc}) if len(inc) else 0


def _is_t_shattered(inc, cand, t):
    traces = {frozenset(j for j, c in enumerate(cand) if row[c]) for row in inc}
    k = len(cand)
    for size in range(k + 1):
        for sub in combinations(range(k), size):
            sub = frozenset(sub)
            rest = [j for j in range(k) if j not in sub]
            if not any(sub | frozenset(extra) in traces
                       for r in range(t) for extra in combinations(rest, r)):
                return False
    return True


def _colex_rank(A):
    return sum(comb(a, j) for j, a in enumerate(sorted(A), 1))


def _stab_brute(local, s, k, t):
    counts = {i: {} for i in range(t, k)}
    transversal_sets = []
    for X in combinations(range(s), k):
        xmask = sum(1 << v for v in X)
        traces = {e & xmask for e in local}
        if not any(tr.bit_count() < t for tr in traces):
            transversal_sets.append(xmask)
        for i in range(t, k):
            for A in combinations(X, i):
                amask = sum(1 << v for v in A)
                B = xmask & ~amask
                stabs = all((tr & amask).bit_count() >= t for tr in traces if tr & B == B)
                if stabs:
                    r = _colex_rank(A)
                    counts[i][r] = counts[i].get(r, 0) + 1
    return counts, transversal_sets


def test_trace_counts_match_definition(each_backend):
    rng = np.random.default_rng(1)
    for _ in range(20):
        inc = _random_inc(rng, int(rng.integers(0, 15)), 8)
        cands = np.array([rng.choice(8, size=3, replace=False) for _ in range(10)])
        got = kernels.trace_counts(inc, cands)
        assert list(got) == [_trace_size(inc, c) for c in cands]


@pytest.mark.parametrize("t", [1, 2, 3])
def test_t_shattered_matches_definition(each_backend, t):
    rng = np.random.default_rng(t)
    for _ in range(25):
        inc = _random_inc(rng, int(rng.integers(1, 20)), 6, 0.5)
        k = int(rng.integers(1, 5))
        cands = np.array([rng.choice(6, size=k, replace=False) for _ in range(8)])
        got = kernels.t_shattered(inc, cands, t)
        assert list(got) == [_is_t_shattered(inc, c, t) for c in cands]


@pytest.mark.parametrize("t,k", [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])
def test_stab_counts_match_definition(each_backend, t, k):
    rng = np.random.default_rng(10 * t + k)
    for _ in range(6):
        s = int(rng.integers(k, 8))
        local = [int(x) for x in rng.integers(0, 1 << s, size=int(rng.integers(1, 25)))]
        counts, transversal = kernels.stab_counts(local, s, k, t)
        want, trans_sets = _stab_brute(local, s, k, t)
        for i in range(t, k):
            for r in range(comb(s, i)):
                assert counts[i][r] == want[i].get(r, 0)
        if trans_sets:
            assert transversal in trans_sets
        else:
            assert transversal == -1


def test_unrank_inverts_rank():
    for i in range(1, 5):
        for A in combinations(range(9), i):
            assert kernels.unrank_colex(_colex_rank(A), i) == A


def test_cycle_crossings_and_cover(each_backend):
    rng = np.random.default_rng(5)
    inc = _random_inc(rng, 30, 12)
    order = rng.permutation(12)
    got = kernels.cycle_crossings(inc, order)
    for r in range(30):
        want = sum(inc[r, order[j]] != inc[r, order[(j + 1) % 12]] for j in range(12))
        assert got[r] == want
    members = np.array([[0, 1], [2, 3], [4, 5]])
    rows = np.arange(30)
    q = kernels.first_uncovered(inc, rows, members)
    covered = [any(inc[r, a] and inc[r, b] for a, b in members) for r in rows]
    assert q == (covered.index(False) if not all(covered) else -1)


def test_pair_distance(each_backend):
    rng = np.random.default_rng(7)
    cols = _random_inc(rng, 10, 40)
    w = rng.random(40)
    for u, v in [(0, 1), (3, 9), (4, 4)]:
        want = float(sum(w[r] for r in range(40) if cols[u, r] != cols[v, r]))
        assert kernels.pair_distance(cols, w, u, v) == pytest.approx(want)


@pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba not installed")
def test_backends_agree_on_random_inputs():
    rng = np.random.default_rng(11)
    inc = _random_inc(rng, 60, 14)
    cands = np.array([rng.choice(14, size=4, replace=False) for _ in range(50)])
    local = [int(x) for x in rng.integers(0, 1 << 10, size=40)]
    out = {}
    for name in ("numba", "numpy"):
        previous = _accel.set_backend(name)
        try:
            c, tr = kernels.stab_counts(local, 10, 4, 2)
            out[name] = (kernels.trace_counts(inc, cands).tolist(),
                         kernels.t_shattered(inc, cands, 2).tolist(),
                         [row.tolist() for row in c], tr,
                         kernels.cycle_crossings(inc, np.arange(14)).tolist())
        finally:
            _accel.set_backend(previous)
    assert out["numba"] == out["numpy"]


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _accel.set_backend("fortran")
