"""Constructions of eps-nets and eps-t-nets, the verifier and the exact oracle.

Throughout, an edge e is heavy for eps when |e| >= eps * n, evaluated with
exact rationals.
"""

import time
from dataclasses import dataclass, field
from itertools import combinations, product
from math import ceil, comb, log2

import numpy as np

from . import kernels
from .dims import largest_t_shattered
from .errors import (BadDimension, DomainError, GaveUp, Infeasible, NeedsDedup,
                     NoProgress, SizeExceeded, TooLarge, TooSmall,
                     TransversalFound, WrongDimension)
from .exact import hitting_set, min_hitting_set
from .hypergraph import (Hypergraph, compress, heavy_edges, heavy_threshold,
                         mask_of, members)
from .numbers import as_fraction
from .tuples import build_Ht_lc

POOL_GUARD = 10_000
PRODUCT_GUARD = 1_000_000
STAB_EDGE_LIMIT = 62
# subsets A of (d+1)-sets X enumerated per stabbing iteration
STAB_WORK_LIMIT = 10_000_000


@dataclass(frozen=True)
class TSubsetFamily:
    t: int
    members: tuple
    provenance: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        ms = tuple(sorted(set(int(s) for s in self.members)))
        for s in ms:
            if s.bit_count() != self.t:
                raise ValueError(f"member {members(s)} does not have {self.t} vertices")
        object.__setattr__(self, "members", ms)

    @property
    def size(self):
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def as_lists(self):
        return [members(s) for s in self.members]

    def downgrade(self):
        """One vertex from each member (the lowest); an eps-net when self is an eps-t-net."""
        return TSubsetFamily(1, tuple(s & -s for s in self.members),
                             {"method": "downgrade"})


@dataclass
class NetReport:
    eps: object
    t: int
    size: int
    valid: bool
    witness: int = None
    runtime_ms: float = None

    def __post_init__(self):
        if not self.valid and self.witness is None:
            raise ValueError("an invalid report needs a witness edge")


def verify_net(H, eps, t, S):
    """Check that every heavy edge contains some member of S."""
    start = time.perf_counter()
    rows = heavy_edges(H, eps)
    mem = [members(s) for s in S.members if s.bit_count() == t]
    arr = np.array(mem, dtype=np.int64).reshape(len(mem), t)
    q = kernels.first_uncovered(H.incidence, rows, arr) if rows else -1
    witness = None if q < 0 else rows[q]
    ms = (time.perf_counter() - start) * 1000.0
    return NetReport(as_fraction(eps), t, S.size, witness is None, witness, ms)


def _eps_check(eps):
    e = as_fraction(eps)
    if not 0 < e <= 1:
        raise DomainError(f"eps must lie in (0, 1], got {eps}")
    return e


def _heavy_masks(H, eps):
    return [H.edges[i] for i in heavy_edges(H, eps)]


# ---------------------------------------------------------------------------
# exact minimum
# ---------------------------------------------------------------------------


def min_net_exact(H, eps, t, node_budget=None):
    """A minimum eps-t-net by branch and bound over the hitting-set form."""
    _eps_check(eps)
    heavy = sorted(set(_heavy_masks(H, eps)))
    if len(heavy) > POOL_GUARD:
        raise TooLarge(f"{len(heavy)} heavy edges exceeds {POOL_GUARD}")
    if any(e.bit_count() < t for e in heavy):
        raise Infeasible(f"a heavy edge has fewer than t = {t} vertices")
    pool = {}
    for e in heavy:
        if comb(e.bit_count(), t) > POOL_GUARD:
            raise TooLarge(f"candidate pool exceeds {POOL_GUARD}")
        for s in combinations(members(e), t):
            if s not in pool:
                pool[s] = len(pool)
                if len(pool) > POOL_GUARD:
                    raise TooLarge(f"candidate pool exceeds {POOL_GUARD}")
    cands = list(pool)
    constraints = []
    for e in heavy:
        c = 0
        for s in combinations(members(e), t):
            c |= 1 << pool[s]
        constraints.append(c)
    kwargs = {} if node_budget is None else {"node_budget": node_budget}
    chosen = min_hitting_set(constraints, len(cands), **kwargs)
    return TSubsetFamily(t, tuple(mask_of(cands[j]) for j in chosen),
                         {"method": "exact", "eps": as_fraction(eps)})


def hitting_net(sets, n, node_budget=200_000):
    """Vertex set meeting every mask in ``sets``: exact when cheap, else greedy."""
    sets = [s for s in set(sets)]
    if not sets:
        return [], True
    return hitting_set(sorted(sets), n, node_budget)


# ---------------------------------------------------------------------------
# random sampling baseline
# ---------------------------------------------------------------------------


def dimension_upper_bound(H):
    """Exact VC-dimension when cheap, else floor(log2 #distinct edges)."""
    distinct = len(set(H.edges))
    if distinct <= 1:
        return 0
    if H.n <= 25:
        return largest_t_shattered(H, 1)[0]
    return int(log2(distinct))


def random_net(H, eps, t, seed=0, oversample=1.0, d=None, rounds=10):
    """Uniform random t-subsets, doubling the sample until it verifies."""
    e = _eps_check(eps)
    if e * H.n < t:
        raise DomainError("eps * n must be at least t")
    if d is None:
        d = dimension_upper_bound(H)
    rng = np.random.default_rng(seed)
    size = max(1, ceil(oversample * max(d, 1) / float(e) * log2(max(1.0 / float(e), 2.0))))
    fam = None
    for r in range(1, rounds + 1):
        picks = set()
        for _ in range(size):
            picks.add(mask_of(rng.choice(H.n, size=t, replace=False).tolist()))
        fam = TSubsetFamily(t, tuple(picks),
                            {"method": "random", "rounds": r, "seed": seed})
        if verify_net(H, eps, t, fam).valid:
            return fam
        size *= 2
    err = GaveUp(f"no valid sample after {rounds} rounds")
    err.family = fam
    raise err


# ---------------------------------------------------------------------------
# deterministic stabbing constructions
# ---------------------------------------------------------------------------


def _best_choice(counts, lo, hi):
    """(i, A) maximising counts[i][rank(A)]; ties to smaller i, then lexicographic A."""
    best_val, best = 0, None
    for i in range(lo, hi + 1):
        row = counts[i]
        top = int(row.max()) if row.size else 0
        if top > best_val:
            best_val = top
            ranks = np.flatnonzero(row == top)
            best = (i, min(kernels.unrank_colex(r, i) for r in ranks))
    return best_val, best


def _stab_loop(H, eps, t, d, accept_transversal):
    if not H.dedup:
        raise NeedsDedup("stabbing constructions need distinct edges")
    if d < t:
        raise BadDimension(f"d = {d} must be at least t = {t}")
    _eps_check(eps)
    q = heavy_threshold(eps, H.n)
    k = d + 1
    heavy = _heavy_masks(H, eps)
    if not heavy:
        return [], 0, 0
    if q < t:
        raise Infeasible(f"heavy edges may have fewer than t = {t} vertices")
    if q > STAB_EDGE_LIMIT:
        raise TooLarge(f"truncated heavy edges of {q} vertices are out of reach")
    if q >= k and comb(q, k) << k > STAB_WORK_LIMIT:
        raise TooLarge(f"C({q}, {k}) * 2^{k} stabbing candidates exceeds {STAB_WORK_LIMIT}")
    truncated = []
    for e in heavy:
        s = 0
        for v in members(e)[:q]:
            s |= 1 << v
        truncated.append(s)
    net = set()
    iterations = 0
    direct = 0
    while True:
        target = None
        for s in truncated:
            if not any(m & s == m for m in net):
                target = s
                break
        if target is None:
            break
        verts = members(target)
        if len(verts) < k:
            # no (d+1)-set fits inside; cover the edge with all its t-subsets
            net.update(mask_of(c) for c in combinations(verts, t))
            direct += 1
            continue
        local = np.array([compress(e & target, verts) for e in H.edges], dtype=np.int64)
        counts, transversal = kernels.stab_counts(local, len(verts), k, t)
        if transversal >= 0:
            X = [verts[j] for j in members(transversal)]
            fam = tuple(mask_of(c) for c in combinations(X, t))
            if accept_transversal:
                return list(fam), iterations, direct
            raise TransversalFound(
                f"every edge has at least {t} vertices in {X}", fam)
        val, choice = _best_choice(counts, t, d)
        if val == 0:
            raise NoProgress(f"no stabbing pair inside heavy edge {verts}; d may be too small")
        i, A = choice
        A = [verts[j] for j in A]
        if t == 1:
            net.update(1 << v for v in A)
        else:
            net.update(mask_of(c) for c in combinations(A, t))
        iterations += 1
    return sorted(net), iterations, direct


def det_eps_net(H, eps, d, accept_transversal=False):
    """eps-net from repeated stabbing inside an unhit truncated heavy edge."""
    if d < 1:
        raise BadDimension("d must be at least 1")
    fam, it, direct = _stab_loop(H, eps, 1, d, accept_transversal)
    return TSubsetFamily(1, tuple(fam), {"method": "det", "d": d, "iterations": it,
                                         "direct_cover": direct})


def direct_eps_t_net(H, eps, t, d, accept_transversal=False):
    """eps-t-net from repeated t-stabbing; d bounds the t-VC-dimension."""
    if t < 2:
        raise BadDimension("the direct construction is for t >= 2")
    e = _eps_check(eps)
    if e * H.n < t:
        raise DomainError("eps * n must be at least t")
    fam, it, direct = _stab_loop(H, eps, t, d, accept_transversal)
    return TSubsetFamily(t, tuple(fam), {"method": "direct", "d": d, "iterations": it,
                                         "direct_cover": direct})


# ---------------------------------------------------------------------------
# constructions built on 1-nets
# ---------------------------------------------------------------------------


def trivial_eps_t_net(H, eps, t, node_budget=200_000):
    """All transversals of t pairwise disjoint eps-nets.

    Net j hits what is left of every heavy edge after deleting the vertices
    of nets 1..j-1, so each heavy edge meets every net and contains one
    transversal.
    """
    e = _eps_check(eps)
    if e * H.n < t:
        raise DomainError("eps * n must be at least t")
    heavy = sorted(set(_heavy_masks(H, eps)))
    used = 0
    nets = []
    for j in range(t):
        rest = [h & ~used for h in heavy]
        if any(r == 0 for r in rest):
            raise Infeasible(f"a heavy edge is exhausted before net {j + 1}")
        chosen, _ = hitting_net(rest, H.n, node_budget)
        nets.append(chosen)
        used |= mask_of(chosen)
    total = 1
    for nj in nets:
        total *= len(nj)
    if total > PRODUCT_GUARD:
        raise TooLarge(f"{total} transversals exceeds {PRODUCT_GUARD}")
    fam = tuple(mask_of(c) for c in product(*nets)) if heavy else ()
    return TSubsetFamily(t, fam, {"method": "trivial",
                                  "net_sizes": [len(nj) for nj in nets]})


def lc_margins(H, eps, T):
    """Per heavy edge: blocks fully inside it minus the count the inner net needs."""
    need = heavy_threshold(as_fraction(eps) / 2, T.hyper.n)
    out = {}
    for i in heavy_edges(H, eps):
        inside = sum(1 for b in T.back_map if H.edges[i] & b == b)
        out[i] = inside - need
    return out


def lc_eps_t_net(H, eps, t, seed=0, d=None, cycle=None):
    """Map an eps/2-net of the low-crossing tuple hypergraph back to t-subsets.

    Validity is not certified in advance; the result's provenance carries
    the verifier's verdict, the cycle's crossing number and the per-edge
    block margins. A prebuilt spanning ``cycle`` may be passed in.
    """
    e = _eps_check(eps)
    if H.n < t:
        raise TooSmall(f"need at least t = {t} vertices")
    T = build_Ht_lc(H, t, seed, cycle)
    inner = T.hyper.deduplicated()
    half = e / 2
    if not heavy_edges(inner, half):
        chosen = []
    elif d is not None:
        chosen = det_eps_net(inner, half, d, accept_transversal=True).members
    else:
        try:
            chosen = random_net(inner, half, 1, seed).members
        except GaveUp as err:
            chosen = err.family.members
        except DomainError:
            chosen = []  # too few blocks for any net; reported invalid below
    fam = tuple(T.back_map[m.bit_length() - 1] for m in chosen)
    out = TSubsetFamily(t, fam, {"method": "lc", "seed": seed})
    report = verify_net(H, eps, t, out)
    margins = lc_margins(H, eps, T)
    out.provenance.update(valid=report.valid, witness=report.witness,
                          max_crossing=T.cycle.max_crossing,
                          min_margin=min(margins.values(), default=None))
    return out


def vc1_eps_t_net(H, eps, t, d=None):
    """Layered construction for hypergraphs of VC-dimension 1.

    Layer i adds an eps-net of the sub-hypergraph induced off the current
    set, restricted to heavy edges met fewer than i times; each layer is
    padded to exactly ceil(1/eps) vertices. The result takes t vertices from
    every trace of a heavy edge on the final set that has at least t.
    """
    e = _eps_check(eps)
    if e > as_fraction("1/2"):
        raise DomainError("eps must be at most 1/2")
    k = ceil(1 / e)
    if H.n < t * k:
        raise DomainError(f"need n >= t * ceil(1/eps) = {t * k}")
    if d is None:
        d = largest_t_shattered(H, 1, guard=None)[0]
    if d > 1:
        raise WrongDimension(f"VC-dimension is {d}, not 1")
    heavy = sorted(set(_heavy_masks(H, eps)))
    net = 0
    for i in range(1, t + 1):
        under = [h & ~net for h in heavy if (h & net).bit_count() < i]
        layer, _ = hitting_net(under, H.n, node_budget=2_000_000) if under else ([], True)
        if len(layer) > k:
            layer = min_hitting_set(sorted(set(under)), H.n)
            if len(layer) > k:
                raise SizeExceeded(f"layer {i} needs {len(layer)} > {k} vertices")
        layer = set(layer)
        for v in range(H.n):
            if len(layer) >= k:
                break
            if not (net >> v) & 1:
                layer.add(v)
        net |= mask_of(layer)
    fam = set()
    for h in heavy:
        tr = members(h & net)
        if len(tr) >= t:
            fam.add(mask_of(tr[:t]))
    return TSubsetFamily(t, tuple(fam), {"method": "vc1", "layer_size": k,
                                         "net_vertices": members(net)})
