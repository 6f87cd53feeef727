"""Exact VC-dimension, t-VC-dimension and a dual shatter exponent fit."""

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import kernels
from .errors import TooLarge
from .hypergraph import Hypergraph, dual, mask_of, members, shatter_function

VC_GUARD = 25
T_VC_GUARD = 16
LEVEL_BUDGET = 2_000_000


@dataclass
class DimensionReport:
    vc: int
    dual_vc_bound: int
    t_vc: dict = field(default_factory=dict)
    dual_shatter_fit: tuple = None

    def as_dict(self):
        out = {"vc": self.vc, "dual_vc_bound": self.dual_vc_bound,
               "t_vc": {str(k): v for k, v in sorted(self.t_vc.items())}}
        if self.dual_shatter_fit is not None:
            out["dual_shatter_fit"] = {"C": self.dual_shatter_fit[0],
                                       "d_star": self.dual_shatter_fit[1]}
        return out


def _next_level(level, k):
    """Apriori join: (k+1)-sets all of whose k-subsets are in ``level``."""
    if k == 0:
        return []
    known = set(level)
    by_prefix = {}
    for s in level:
        by_prefix.setdefault(s[:-1], []).append(s[-1])
    out = []
    for prefix, tails in by_prefix.items():
        tails.sort()
        for a in range(len(tails)):
            for b in range(a + 1, len(tails)):
                cand = prefix + (tails[a], tails[b])
                if all(cand[:j] + cand[j + 1:] in known for j in range(k - 1)):
                    out.append(cand)
    return out


def largest_t_shattered(H, t=1, guard=VC_GUARD, budget=LEVEL_BUDGET):
    """Size and one witness of a largest t-shattered vertex set.

    Search runs level by level; t-shattered sets are closed under taking
    subsets, so level k+1 candidates are joined from level-k survivors.
    ``guard=None`` drops the vertex-count guard and relies on ``budget``
    (candidates per level) alone.
    """
    if guard is not None and H.n > guard:
        raise TooLarge(f"exhaustive search limited to {guard} vertices, got {H.n}")
    if not H.edges:
        return 0, ()
    rows = sorted(set(H.edges))
    inc = Hypergraph(H.n, tuple(rows)).incidence
    distinct = len(rows)
    best = ()
    level = [()]
    k = 0
    while level:
        if k == 0:
            cands = [(v,) for v in range(H.n)]
        else:
            cands = _next_level(level, k)
        k += 1
        if not cands:
            break
        if t == 1 and (1 << k) > distinct:
            break
        if len(cands) > budget:
            raise TooLarge(f"{len(cands)} candidate {k}-sets exceeds the budget")
        if k > 24:
            raise TooLarge("shattered sets above 24 vertices are out of reach")
        flags = kernels.t_shattered(inc, np.array(cands, dtype=np.int64), t)
        level = [c for c, ok in zip(cands, flags) if ok]
        if level:
            best = level[0]
    return len(best), best


def vc_dimension(H, guard=VC_GUARD, budget=LEVEL_BUDGET):
    return largest_t_shattered(H, 1, guard, budget)[0]


def is_t_shattered(H, T, t, guard=20):
    k = T.bit_count()
    if k > guard:
        raise TooLarge(f"|T| = {k} exceeds the guard {guard}")
    if not H.edges:
        return False
    cols = np.array([members(T)], dtype=np.int64).reshape(1, k)
    return bool(kernels.t_shattered(H.incidence, cols, t)[0])


def t_vc_dimension(H, t, guard=T_VC_GUARD, budget=LEVEL_BUDGET):
    if t < 1:
        raise ValueError("t must be positive")
    return largest_t_shattered(H, t, guard, budget)[0]


def dual_shatter_values(H, m_max, budget=5_000_000):
    D = dual(H if H.dedup else H.deduplicated())
    return {m: shatter_function(D, m, guard_n=10**9, budget=budget)
            for m in range(1, m_max + 1)}


def dual_shatter_fit(H, m_max, budget=5_000_000):
    """Least-squares exponent of log pi*(m) against log m over m = 2..m_max.

    Returns ``(C, d_star)`` with C the smallest constant for which
    pi*(m) <= C m^d_star on the sampled range. A diagnostic only.
    """
    if m_max < 2:
        raise ValueError("need m_max >= 2")
    values = dual_shatter_values(H, m_max, budget)
    ms = [m for m in range(2, m_max + 1) if values[m] > 0]
    if not ms:
        return 0.0, 0.0
    xs = np.log([float(m) for m in ms])
    ys = np.log([float(values[m]) for m in ms])
    if len(ms) == 1 or np.ptp(ys) == 0:
        d_star = 0.0
    else:
        d_star = float(np.polyfit(xs, ys, 1)[0])
    c = max(values[m] / m ** d_star for m in ms)
    return float(c), d_star


def dimension_report(H, t_values=(2,), m_max=None, guard=VC_GUARD, t_guard=T_VC_GUARD):
    d = vc_dimension(H, guard=guard)
    report = DimensionReport(vc=d, dual_vc_bound=2 ** (d + 1))
    for t in sorted(t_values):
        report.t_vc[t] = t_vc_dimension(H, t, guard=t_guard) if t > 1 else d
    if m_max:
        report.dual_shatter_fit = dual_shatter_fit(H, m_max)
    return report


def sauer_bound(n, d):
    return sum(comb(n, i) for i in range(d + 1))


def shatter_witness_mask(H, t=1, guard=VC_GUARD):
    return mask_of(largest_t_shattered(H, t, guard)[1])


__all__ = [
    "DimensionReport", "vc_dimension", "is_t_shattered", "t_vc_dimension",
    "largest_t_shattered", "dual_shatter_fit", "dual_shatter_values",
    "dimension_report", "sauer_bound", "shatter_witness_mask",
]
