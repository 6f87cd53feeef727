"""Turan numbers against minimum nets, and rainbow pair colorings."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb

from .errors import TooLarge, TooSmall
from .exact import hitting_set
from .hypergraph import complete_uniform, heavy_edges, members
from .nets import min_net_exact
from .numbers import as_fraction

TURAN_GUARD = 40


@dataclass(frozen=True)
class TuranResult:
    n: int
    k: int
    t: int
    turan_number: int
    min_net_size: int
    identity_holds: bool


def _check(n, k, t):
    if not n >= k > t >= 2:
        raise ValueError("need n >= k > t >= 2")
    if comb(n, t) > TURAN_GUARD:
        raise TooLarge(f"C({n}, {t}) = {comb(n, t)} exceeds the search guard {TURAN_GUARD}")


def turan_exact(n, k, t):
    """Most t-subsets of an n-set with no k-set having all its t-subsets chosen.

    Branch and bound over t-subsets in lexicographic order, trying
    inclusion first. Some t-subset must be left out, and the vertex
    symmetry lets that be the first one, so the search starts with it
    excluded. The bound subtracts one exclusion per k-set in a greedy
    packing of k-sets whose open t-subsets are pairwise disjoint.
    """
    _check(n, k, t)
    tsets = list(combinations(range(n), t))
    index = {s: i for i, s in enumerate(tsets)}
    M = len(tsets)
    ksets = []
    for K in combinations(range(n), k):
        m = 0
        for s in combinations(K, t):
            m |= 1 << index[s]
        ksets.append(m)
    by_tset = [[K for K in ksets if (K >> i) & 1] for i in range(M)]
    best = [0]

    def bound(chosen, i):
        open_mask = ((1 << M) - 1) ^ ((1 << i) - 1)
        used = 0
        forced = 0
        for K in ksets:
            if K & ~(chosen | open_mask):
                continue  # already broken by an exclusion
            free = K & open_mask
            if free & used == 0:
                used |= free
                forced += 1
        return chosen.bit_count() + (M - i) - forced

    def search(chosen, i):
        if i == M:
            best[0] = max(best[0], chosen.bit_count())
            return
        if bound(chosen, i) <= best[0]:
            return
        bit = 1 << i
        if all((K & ~(chosen | bit)) for K in by_tset[i]):
            search(chosen | bit, i + 1)
        search(chosen, i + 1)

    search(0, 1)
    return best[0]


def min_net_complete(n, k, t):
    """Size of a smallest (k/n)-t-net of the complete k-uniform hypergraph."""
    _check(n, k, t)
    H = complete_uniform(n, k)
    return min_net_exact(H, Fraction(k, n), t).size


def check_turan_identity(n, k, t):
    T = turan_exact(n, k, t)
    net = min_net_complete(n, k, t)
    return TuranResult(n, k, t, T, net, net == comb(n, t) - T)


def mantel(n):
    return n * n // 4


# ---------------------------------------------------------------------------
# rainbow pair coloring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PairColoring:
    n: int
    colors: dict
    num_colors: int
    rounds: tuple = ()  # pair masks given each round's color, in order

    def color_of(self, u, v):
        return self.colors[(1 << u) | (1 << v)]


def _pair_masks(H, n):
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    inner = []
    for e in H.edges:
        m = 0
        for p in combinations(members(e), 2):
            m |= 1 << index[p]
        inner.append(m)
    return pairs, inner


def rainbow_pair_coloring(H, eps, seed=0, node_budget=1_000):
    """Color pairs so every heavy edge holds a pair of every color.

    Round r takes a net, at threshold eps^2/4 of the uncolored pairs, of
    the pair hypergraph with colored pairs removed, and gives its pairs
    color r. Rounds continue while every heavy edge keeps at least
    ceil(eps^2 n^2 / 4) uncolored pairs; such an edge is heavy in the
    residual, so the round's net meets it. Leftover pairs get color 0.
    """
    e = as_fraction(eps)
    n = H.n
    if e <= Fraction(2, n if n else 1):
        raise TooSmall("need eps > 2/n")
    heavy = heavy_edges(H, e)
    if not heavy:
        raise TooSmall("no heavy edges")
    pairs, inner = _pair_masks(H, n)
    need = ceil(e * e * n * n / 4)
    frac = e * e / 4
    uncolored = (1 << len(pairs)) - 1
    colors = {}
    rounds = 0
    history = []
    while all((inner[i] & uncolored).bit_count() >= need for i in heavy):
        live = uncolored.bit_count()
        cons = sorted({m & uncolored for m in inner
                       if (m & uncolored).bit_count() >= frac * live})
        chosen, _ = hitting_set(cons, len(pairs), node_budget)
        if not chosen:
            break
        for q in chosen:
            a, b = pairs[q]
            colors[(1 << a) | (1 << b)] = rounds
            uncolored &= ~(1 << q)
        history.append(tuple((1 << pairs[q][0]) | (1 << pairs[q][1]) for q in chosen))
        rounds += 1
    for q in members(uncolored):
        a, b = pairs[q]
        colors[(1 << a) | (1 << b)] = 0
    return PairColoring(n, colors, max(rounds, 1), tuple(history))


def verify_rainbow(H, eps, coloring):
    """Every heavy edge contains at least one pair of each color."""
    want = set(range(coloring.num_colors))
    for i in heavy_edges(H, eps):
        seen = set()
        for a, b in combinations(members(H.edges[i]), 2):
            c = coloring.colors.get((1 << a) | (1 << b))
            if c is not None:
                seen.add(c)
        if not want <= seen:
            return False
    return True
