"""Tuple hypergraphs H^t and H^t_lc, and low-crossing spanning cycles."""

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import kernels
from .errors import NeedsDedup, TooLarge, TooSmall
from .hypergraph import Hypergraph, mask_of, members

HT_GUARD = 1_000_000
# weights are rescaled by an exact power of two once the largest passes this
_WEIGHT_CEILING = 2.0 ** 600
_WEIGHT_SCALE = 2.0 ** -500


@dataclass(frozen=True)
class TupleHypergraph:
    base_n: int
    t: int
    hyper: Hypergraph
    back_map: tuple
    edge_of_base: tuple = ()
    cycle: object = None

    def tuple_vertex(self, j):
        return members(self.back_map[j])

    def lift(self, tuple_mask):
        """Base t-subsets (as masks) for the tuple-vertices in ``tuple_mask``."""
        return [self.back_map[j] for j in members(tuple_mask)]


@dataclass(frozen=True)
class SpanningCycle:
    order: tuple
    crossings: tuple
    max_crossing: int
    tree_edges: tuple = field(default=(), compare=False)

    @classmethod
    def from_order(cls, H, order):
        order = tuple(int(v) for v in order)
        if sorted(order) != list(range(H.n)):
            raise ValueError("order must be a permutation of the vertices")
        cr = kernels.cycle_crossings(H.incidence, np.array(order, dtype=np.int64))
        cr = tuple(int(c) for c in cr)
        return cls(order, cr, max(cr, default=0))


def _dedup_edges(edges):
    seen = set()
    out = []
    index = []
    for e in edges:
        if e not in seen:
            seen.add(e)
            out.append(e)
    pos = {e: i for i, e in enumerate(out)}
    index = tuple(pos[e] for e in edges)
    return tuple(out), index


def build_Ht(H, t):
    """All t-subsets as vertices (lexicographic); one tuple-edge per distinct
    family {s : s subset of e}."""
    if t < 1:
        raise ValueError("t must be positive")
    total = comb(H.n, t)
    if total > HT_GUARD:
        raise TooLarge(f"C({H.n}, {t}) = {total} tuple-vertices exceeds {HT_GUARD}")
    subsets = list(combinations(range(H.n), t))
    index = {s: j for j, s in enumerate(subsets)}
    raw = []
    for e in H.edges:
        mask = 0
        for s in combinations(members(e), t):
            mask |= 1 << index[s]
        raw.append(mask)
    edges, edge_of_base = _dedup_edges(raw)
    back = tuple(mask_of(s) for s in subsets)
    return TupleHypergraph(H.n, t, Hypergraph(total, edges), back, edge_of_base)


def _tie_keys(n, seed):
    return np.random.default_rng(seed).permutation(n)


def build_spanning_cycle(H, seed=0):
    """Low-crossing spanning cycle by iterative reweighting.

    Every edge starts with weight 1. Each step joins the two components
    whose closest pair (u, v) crosses the least total weight, then doubles
    the weight of every edge that pair crosses. Ties go to the smallest u,
    then to a seed-keyed order on v. The resulting tree becomes a cycle
    through its depth-first preorder from vertex 0, which at most doubles
    any edge's crossings.

    Pair distances only grow, so a heap of possibly stale values is a valid
    lower bound: an entry popped after being recomputed under the current
    weights is the exact minimum.
    """
    n = H.n
    if n < 3:
        raise TooSmall("a spanning cycle needs at least 3 vertices")
    if not H.dedup:
        raise NeedsDedup("spanning cycle builder needs distinct edges")
    keys = _tie_keys(n, seed)
    # an edge and its complement split the same pairs and are always
    # doubled together, so they share one row carrying their multiplicity;
    # the empty and full sets split nothing and are dropped
    full = (1 << n) - 1
    mult = {}
    for e in H.edges:
        if e and e != full:
            c = min(e, full ^ e)
            mult[c] = mult.get(c, 0) + 1
    rows = Hypergraph(n, tuple(mult))
    inc = rows.incidence
    m = inc.shape[0]
    cols = np.ascontiguousarray(inc.T)
    w = np.array(list(mult.values()), dtype=np.float64)
    if m:
        Xf = inc.astype(np.float64)
        gram = (Xf.T * w) @ Xf
        deg = np.diag(gram).copy()
        D0 = deg[:, None] + deg[None, :] - 2.0 * gram
    else:
        D0 = np.zeros((n, n))
    heap = [(float(D0[u, v]), u, int(keys[v]), v, 0)
            for u in range(n) for v in range(u + 1, n)]
    heapq.heapify(heap)
    del D0
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    epoch = 0
    adj = [[] for _ in range(n)]
    tree = []
    for _ in range(n - 1):
        while True:
            d, u, kv, v, ep = heapq.heappop(heap)
            if find(u) == find(v):
                continue
            if ep == epoch:
                break
            fresh = kernels.pair_distance(cols, w, u, v)
            heapq.heappush(heap, (fresh, u, kv, v, epoch))
        tree.append((u, v))
        adj[u].append(v)
        adj[v].append(u)
        parent[find(u)] = find(v)
        crossed = cols[u] != cols[v]
        if crossed.any():
            w[crossed] *= 2.0
            epoch += 1
            if w.max() > _WEIGHT_CEILING:
                # exact power-of-two rescale keeps every comparison intact
                w *= _WEIGHT_SCALE
                heap = [(x * _WEIGHT_SCALE, a, b, c, e) for x, a, b, c, e in heap]
    order = []
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    while stack:
        x = stack.pop()
        if seen[x]:
            continue
        seen[x] = True
        order.append(x)
        for y in sorted(adj[x], reverse=True):
            if not seen[y]:
                stack.append(y)
    cyc = SpanningCycle.from_order(H, order)
    return SpanningCycle(cyc.order, cyc.crossings, cyc.max_crossing, tuple(tree))


def build_Ht_lc(H, t, seed=0, cycle=None):
    """Consecutive disjoint t-blocks along a low-crossing cycle.

    Block k is {v_{kt}, ..., v_{kt+t-1}} in cycle order; vertices left over
    when t does not divide n are dropped. Each base edge maps to the set of
    blocks it contains. ``cycle`` may be supplied to skip the builder.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if H.n < t:
        raise TooSmall(f"need at least t = {t} vertices")
    if cycle is None:
        if H.n >= 3:
            cycle = build_spanning_cycle(H if H.dedup else H.deduplicated(), seed)
        else:
            cycle = SpanningCycle.from_order(H, range(H.n))
    order = cycle.order
    blocks = tuple(mask_of(order[k * t:(k + 1) * t]) for k in range(H.n // t))
    raw = []
    for e in H.edges:
        mask = 0
        for k, b in enumerate(blocks):
            if e & b == b:
                mask |= 1 << k
        raw.append(mask)
    edges, edge_of_base = _dedup_edges(raw)
    return TupleHypergraph(H.n, t, Hypergraph(len(blocks), edges), blocks,
                           edge_of_base, cycle)
