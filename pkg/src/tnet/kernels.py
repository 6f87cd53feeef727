"""Hot inner loops, each with a numba and a pure-numpy implementation.

Every public function here dispatches on :func:`tnet._accel.backend`. Both
paths take the same arguments and return identical results; the test suite
checks that on random inputs.

Shared conventions
------------------
``inc``    uint8 incidence matrix, one row per hyperedge, one column per vertex.
``cands``  int64 array (M, k) of column indices, one candidate set per row.
Subsets of a k-element candidate are encoded as k-bit codes, bit j standing
for the candidate's j-th column.
"""

import numpy as np

from ._accel import backend, njit

# numpy paths process candidates in chunks so intermediate arrays stay small
_CHUNK_CELLS = 1 << 22


def _as_inc(inc):
    return np.ascontiguousarray(inc, dtype=np.uint8)


def _as_cands(cands):
    cands = np.asarray(cands, dtype=np.int64)
    if cands.ndim == 1:
        cands = cands.reshape(-1, 1) if cands.size else cands.reshape(0, 0)
    return np.ascontiguousarray(cands)


def _chunk_rows(per_row_cells):
    return max(1, _CHUNK_CELLS // max(1, per_row_cells))


# ---------------------------------------------------------------------------
# trace sizes
# ---------------------------------------------------------------------------


@njit(cache=True)
def _trace_counts_nb(inc, cands):
    m_count, k = cands.shape
    rows = inc.shape[0]
    out = np.zeros(m_count, dtype=np.int64)
    codes = np.empty(rows, dtype=np.int64)
    for m in range(m_count):
        if rows == 0:
            continue
        for r in range(rows):
            code = 0
            for j in range(k):
                if inc[r, cands[m, j]]:
                    code |= 1 << j
            codes[r] = code
        srt = np.sort(codes)
        distinct = 1
        for r in range(1, rows):
            if srt[r] != srt[r - 1]:
                distinct += 1
        out[m] = distinct
    return out


def _codes_np(inc, chunk):
    k = chunk.shape[1]
    weights = (np.int64(1) << np.arange(k, dtype=np.int64))
    sub = inc[:, chunk].astype(np.int64)  # (rows, mc, k)
    return sub @ weights  # (rows, mc)


def _trace_counts_np(inc, cands):
    m_count, k = cands.shape
    rows = inc.shape[0]
    out = np.zeros(m_count, dtype=np.int64)
    if rows == 0 or m_count == 0:
        return out
    step = _chunk_rows(rows * max(k, 1))
    for lo in range(0, m_count, step):
        chunk = cands[lo:lo + step]
        codes = np.sort(_codes_np(inc, chunk), axis=0)
        out[lo:lo + len(chunk)] = 1 + (np.diff(codes, axis=0) != 0).sum(axis=0)
    return out


def trace_counts(inc, cands):
    """|trace| of the row family on each candidate column set."""
    inc, cands = _as_inc(inc), _as_cands(cands)
    if cands.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    if backend() == "numba":
        return _trace_counts_nb(inc, cands)
    return _trace_counts_np(inc, cands)


# ---------------------------------------------------------------------------
# t-shattering
# ---------------------------------------------------------------------------


@njit(cache=True)
def _expand_nb(present, k, rounds):
    # marks every code reachable by deleting at most `rounds` bits
    size = 1 << k
    cur = present.copy()
    for _ in range(rounds):
        nxt = cur.copy()
        for x in range(size):
            if cur[x]:
                for b in range(k):
                    if (x >> b) & 1:
                        nxt[x ^ (1 << b)] = True
        cur = nxt
    return cur


@njit(cache=True)
def _t_shattered_nb(inc, cands, t):
    m_count, k = cands.shape
    rows = inc.shape[0]
    size = 1 << k
    out = np.zeros(m_count, dtype=np.bool_)
    for m in range(m_count):
        present = np.zeros(size, dtype=np.bool_)
        distinct = 0
        for r in range(rows):
            code = 0
            for j in range(k):
                if inc[r, cands[m, j]]:
                    code |= 1 << j
            if not present[code]:
                present[code] = True
                distinct += 1
        if t == 1:
            out[m] = distinct == size
            continue
        reach = _expand_nb(present, k, t - 1)
        ok = True
        for x in range(size):
            if not reach[x]:
                ok = False
                break
        out[m] = ok
    return out


def _expand_np(present, k, rounds):
    size = 1 << k
    idx = np.arange(size)
    cur = present
    for _ in range(rounds):
        nxt = cur.copy()
        for b in range(k):
            with_b = idx[(idx >> b) & 1 == 1]
            nxt[:, with_b ^ (1 << b)] |= cur[:, with_b]
        cur = nxt
    return cur


def _t_shattered_np(inc, cands, t):
    m_count, k = cands.shape
    rows = inc.shape[0]
    size = 1 << k
    out = np.zeros(m_count, dtype=bool)
    if m_count == 0:
        return out
    step = _chunk_rows(max(rows * max(k, 1), size))
    for lo in range(0, m_count, step):
        chunk = cands[lo:lo + step]
        mc = len(chunk)
        present = np.zeros((mc, size), dtype=bool)
        if rows:
            codes = _codes_np(inc, chunk)
            present[np.broadcast_to(np.arange(mc), codes.shape), codes] = True
        reach = _expand_np(present, k, t - 1) if t > 1 else present
        out[lo:lo + mc] = reach.all(axis=1)
    return out


def t_shattered(inc, cands, t=1):
    """For each candidate, whether it is t-shattered (t=1: plain shattering)."""
    inc, cands = _as_inc(inc), _as_cands(cands)
    if cands.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if cands.shape[1] > 24:
        raise ValueError("candidate sets above 24 vertices are not supported")
    if backend() == "numba":
        return _t_shattered_nb(inc, cands, int(t))
    return _t_shattered_np(inc, cands, int(t))


# ---------------------------------------------------------------------------
# stabbing counts inside one hyperedge
# ---------------------------------------------------------------------------


def binomial_table(n_max, k_max):
    table = np.zeros((n_max + 1, k_max + 2), dtype=np.int64)
    for a in range(n_max + 1):
        table[a, 0] = 1
        for b in range(1, min(a, k_max + 1) + 1):
            table[a, b] = table[a - 1, b - 1] + (table[a - 1, b] if b <= a - 1 else 0)
    return table


@njit(cache=True)
def _stab_counts_nb(local, s, k, t, binom):
    # counts[i, r]: number of (k - i)-sets B that the i-set of colex rank r
    # t-stabs, both inside the s-element hyperedge; B ranges over X \ A for
    # every k-subset X of the hyperedge.
    size = 1 << k
    full = size - 1
    width = 0
    for i in range(t, k):
        if binom[s, i] > width:
            width = binom[s, i]
    counts = np.zeros((k, width), dtype=np.int64)
    transversal = np.int64(-1)
    pos = np.arange(k)
    rows = local.shape[0]
    while True:
        present = np.zeros(size, dtype=np.bool_)
        for r in range(rows):
            e = local[r]
            code = 0
            for j in range(k):
                if (e >> pos[j]) & 1:
                    code |= 1 << j
            present[code] = True
        reach = _expand_nb(present, k, t - 1) if t > 1 else present
        if not reach[0] and transversal < 0:
            xm = np.int64(0)
            for j in range(k):
                xm |= np.int64(1) << pos[j]
            transversal = xm
        for c in range(1, full):
            if reach[c]:
                continue
            a_code = full ^ c
            i = 0
            rank = 0
            for j in range(k):
                if (a_code >> j) & 1:
                    i += 1
                    rank += binom[pos[j], i]
            if i >= t:
                counts[i, rank] += 1
        # next combination in lexicographic order
        j = k - 1
        while j >= 0 and pos[j] == s - k + j:
            j -= 1
        if j < 0:
            break
        pos[j] += 1
        for q in range(j + 1, k):
            pos[q] = pos[q - 1] + 1
    return counts, transversal


def _combinations_array(s, k):
    from itertools import combinations

    arr = np.fromiter(
        (v for comb in combinations(range(s), k) for v in comb), dtype=np.int64
    )
    return arr.reshape(-1, k)


def _stab_counts_np(local, s, k, t, binom):
    size = 1 << k
    full = size - 1
    width = max(int(binom[s, i]) for i in range(t, k))
    counts = np.zeros((k, width), dtype=np.int64)
    transversal = -1
    combos = _combinations_array(s, k)
    codes_idx = np.arange(size)
    popcounts = np.array([bin(c).count("1") for c in range(size)])
    a_slots = [np.array([j for j in range(k) if ((full ^ c) >> j) & 1], dtype=np.int64)
               for c in range(size)]
    step = _chunk_rows(max(len(local) * k, size))
    for lo in range(0, len(combos), step):
        pos = combos[lo:lo + step]
        mc = len(pos)
        present = np.zeros((mc, size), dtype=bool)
        if len(local):
            bits = (local[:, None, None] >> pos[None, :, :]) & 1
            codes = bits @ (np.int64(1) << np.arange(k, dtype=np.int64))
            present[np.broadcast_to(np.arange(mc), codes.shape), codes] = True
        reach = _expand_np(present, k, t - 1) if t > 1 else present
        if transversal < 0 and not reach[:, 0].all():
            m = int(np.argmin(reach[:, 0]))
            transversal = int(sum(1 << int(p) for p in pos[m]))
        for c in codes_idx[1:full]:
            i = k - popcounts[c]
            if i < t:
                continue
            missing = ~reach[:, c]
            if not missing.any():
                continue
            apos = pos[missing][:, a_slots[c]]  # (rows, i), ascending
            ranks = binom[apos, np.arange(1, i + 1)].sum(axis=1)
            np.add.at(counts[i], ranks, 1)
    return counts, transversal


def stab_counts(local_edges, s, k, t=1):
    """Stabbing counts for every i-subset A of an s-element hyperedge.

    ``local_edges`` holds each hyperedge's intersection with the hyperedge
    under study, re-encoded on bits 0..s-1. Returns ``(counts, transversal)``
    where ``counts[i][r]`` is the number of (k-i)-subsets B disjoint from the
    i-subset of colex rank ``r`` such that A t-stabs B, for t <= i < k; and
    ``transversal`` is the local mask of the first k-subset X for which the
    empty set is not t-realized (or -1).
    """
    if not 1 <= t < k <= s:
        raise ValueError("need 1 <= t < k <= s")
    if s > 62:
        raise ValueError("hyperedges above 62 vertices must be truncated first")
    local = np.ascontiguousarray(np.asarray(local_edges, dtype=np.int64))
    binom = binomial_table(s, k)
    if backend() == "numba":
        counts, transversal = _stab_counts_nb(local, s, k, t, binom)
        return counts, int(transversal)
    return _stab_counts_np(local, s, k, t, binom)


def unrank_colex(rank, i):
    """Inverse of the colex rank used by :func:`stab_counts`; ascending tuple."""
    from math import comb

    out = []
    rank = int(rank)
    for j in range(i, 0, -1):
        a = j - 1
        while comb(a + 1, j) <= rank:
            a += 1
        out.append(a)
        rank -= comb(a, j)
    return tuple(reversed(out))


# ---------------------------------------------------------------------------
# crossing counts along a cyclic order
# ---------------------------------------------------------------------------


@njit(cache=True)
def _cycle_crossings_nb(inc, order):
    rows = inc.shape[0]
    n = order.shape[0]
    out = np.zeros(rows, dtype=np.int64)
    for r in range(rows):
        c = 0
        for j in range(n):
            a = inc[r, order[j]]
            b = inc[r, order[(j + 1) % n]]
            if a != b:
                c += 1
        out[r] = c
    return out


def _cycle_crossings_np(inc, order):
    walk = inc[:, order]
    return (walk != np.roll(walk, -1, axis=1)).sum(axis=1).astype(np.int64)


def cycle_crossings(inc, order):
    """Per-row number of cyclically consecutive pairs split by the row."""
    inc = _as_inc(inc)
    order = np.ascontiguousarray(np.asarray(order, dtype=np.int64))
    if inc.shape[0] == 0 or order.size == 0:
        return np.zeros(inc.shape[0], dtype=np.int64)
    if backend() == "numba":
        return _cycle_crossings_nb(inc, order)
    return _cycle_crossings_np(inc, order)


# ---------------------------------------------------------------------------
# net coverage
# ---------------------------------------------------------------------------


@njit(cache=True)
def _first_uncovered_nb(inc, rows, members):
    s_count, t = members.shape
    for q in range(rows.shape[0]):
        r = rows[q]
        hit = False
        for s in range(s_count):
            inside = True
            for j in range(t):
                if not inc[r, members[s, j]]:
                    inside = False
                    break
            if inside:
                hit = True
                break
        if not hit:
            return q
    return -1


def _first_uncovered_np(inc, rows, members):
    if members.shape[0] == 0:
        return 0 if rows.size else -1
    step = _chunk_rows(members.size)
    for lo in range(0, rows.size, step):
        block = inc[rows[lo:lo + step]]
        covered = block[:, members].all(axis=2).any(axis=1)
        if not covered.all():
            return lo + int(np.argmin(covered))
    return -1


def first_uncovered(inc, rows, members):
    """Index into ``rows`` of the first row containing no member, or -1.

    ``members`` is an int64 (S, t) array of vertex indices.
    """
    inc = _as_inc(inc)
    rows = np.ascontiguousarray(np.asarray(rows, dtype=np.int64))
    members = np.asarray(members, dtype=np.int64)
    if rows.size == 0:
        return -1
    if members.ndim != 2:
        members = members.reshape(len(members), -1)
    members = np.ascontiguousarray(members)
    if members.shape[0] == 0:
        return 0
    if backend() == "numba":
        return int(_first_uncovered_nb(inc, rows, members))
    return _first_uncovered_np(inc, rows, members)


# ---------------------------------------------------------------------------
# weighted Hamming distance between two vertex columns
# ---------------------------------------------------------------------------


@njit(cache=True)
def _pair_distance_nb(cols, w, u, v):
    total = 0.0
    a = cols[u]
    b = cols[v]
    for r in range(w.shape[0]):
        if a[r] != b[r]:
            total += w[r]
    return total


def pair_distance(cols, w, u, v):
    """Total weight of rows that contain exactly one of u, v.

    ``cols`` is the transposed incidence (one uint8 row per vertex).
    """
    if backend() == "numba":
        return float(_pair_distance_nb(cols, w, u, v))
    return float(np.dot(cols[u] ^ cols[v], w))
