"""Finite hypergraphs over dense vertex indices, stored as integer bitmasks.

A vertex subset is a plain ``int`` whose bit v is set when vertex v belongs
to it; its cardinality is ``mask.bit_count()``. Hyperedges are such masks.
"""

import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import comb

import numpy as np

from . import kernels
from .errors import NeedsDedup, TooLarge

DEFAULT_MAX_VERTICES = 1024


def max_vertices():
    """Mask-width cap; ``TNET_MAX_VERTICES`` overrides the default."""
    raw = os.environ.get("TNET_MAX_VERTICES")
    return int(raw) if raw else DEFAULT_MAX_VERTICES


def mask_of(vertices):
    m = 0
    for v in vertices:
        m |= 1 << int(v)
    return m


def members(mask):
    """Ascending vertex indices of ``mask``."""
    if mask < 1 << 64:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out
    # wide masks: unpacking the bytes beats repeated big-int xors
    raw = np.frombuffer(mask.to_bytes((mask.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist()


def card(mask):
    return mask.bit_count()


def compress(mask, support):
    """Re-encode ``mask`` on the ascending vertex list ``support`` (bit j = support[j])."""
    out = 0
    for j, v in enumerate(support):
        if (mask >> v) & 1:
            out |= 1 << j
    return out


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple
    labels: tuple = None
    dedup: bool = field(init=False)

    def __post_init__(self):
        edges = tuple(int(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if self.n > max_vertices():
            raise TooLarge(f"{self.n} vertices exceeds the cap of {max_vertices()}")
        limit = 1 << self.n
        for e in edges:
            if e < 0 or e >= limit:
                raise ValueError(f"edge mask {e:#x} references a vertex >= {self.n}")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.n:
                raise ValueError("labels must name every vertex")
            object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dedup", len(set(edges)) == len(edges))

    @property
    def m(self):
        return len(self.edges)

    @property
    def vertex_mask(self):
        return (1 << self.n) - 1

    @cached_property
    def incidence(self):
        """uint8 matrix with one row per edge and one column per vertex."""
        width = (self.n + 7) // 8
        raw = b"".join(e.to_bytes(width, "little") for e in self.edges)
        packed = np.frombuffer(raw, dtype=np.uint8).reshape(len(self.edges), width)
        inc = np.unpackbits(packed, axis=1, count=self.n, bitorder="little")
        inc = np.ascontiguousarray(inc)
        inc.setflags(write=False)
        return inc

    @cached_property
    def sizes(self):
        return np.array([e.bit_count() for e in self.edges], dtype=np.int64)

    def deduplicated(self):
        seen = set()
        kept = []
        for e in self.edges:
            if e not in seen:
                seen.add(e)
                kept.append(e)
        return Hypergraph(self.n, tuple(kept), self.labels)

    def edge_members(self, i):
        return members(self.edges[i])

    def __repr__(self):
        return f"Hypergraph(n={self.n}, m={self.m}, dedup={self.dedup})"


def from_edge_lists(n, edge_lists, labels=None):
    return Hypergraph(n, tuple(mask_of(e) for e in edge_lists), labels)


def complete(n):
    """Every subset of an n-vertex set is an edge."""
    if n > 20:
        raise TooLarge("complete hypergraph above 20 vertices")
    return Hypergraph(n, tuple(range(1 << n)))


def complete_uniform(n, k):
    return Hypergraph(n, tuple(mask_of(c) for c in combinations(range(n), k)))


def trace(H, A):
    """The set of distinct intersections of ``A`` with the edges of ``H``."""
    return frozenset(e & A for e in H.edges)


SHATTER_GUARD = 25


def is_shattered(H, A, guard=SHATTER_GUARD):
    k = A.bit_count()
    if k > guard:
        raise TooLarge(f"|A| = {k} exceeds the shatter guard {guard}")
    return len(trace(H, A)) == 1 << k


def dual(H):
    """Vertex i of the dual is edge i of ``H``; each vertex v gives the edge v*."""
    if not H.dedup:
        raise NeedsDedup("dual needs pairwise distinct edges")
    stars = []
    seen = set()
    for v in range(H.n):
        star = 0
        for i, e in enumerate(H.edges):
            if (e >> v) & 1:
                star |= 1 << i
        if star not in seen:
            seen.add(star)
            stars.append(star)
    return Hypergraph(len(H.edges), tuple(stars))


def shatter_function(H, m, guard_n=SHATTER_GUARD, guard_m=3, budget=5_000_000):
    """max |trace(H, A)| over |A| <= m, by exhaustive enumeration.

    Only sets of size exactly min(m, n) need checking since traces only
    grow when A grows.
    """
    if not H.edges:
        return 0
    size = min(m, H.n)
    if H.n > guard_n and size > guard_m:
        raise TooLarge(f"shatter function enumeration C({H.n}, {size}) is guarded")
    if comb(H.n, size) > budget:
        raise TooLarge(f"C({H.n}, {size}) candidate sets exceeds the budget")
    if size == 0:
        return 1
    best = 0
    batch = []
    for c in combinations(range(H.n), size):
        batch.append(c)
        if len(batch) == 65536:
            best = max(best, int(kernels.trace_counts(H.incidence, np.array(batch)).max()))
            batch.clear()
    if batch:
        best = max(best, int(kernels.trace_counts(H.incidence, np.array(batch)).max()))
    return best


def induced(H, sub):
    """Restriction of ``H`` to the vertex subset ``sub``.

    Returns ``(hypergraph, vertex_map)`` where ``vertex_map[j]`` is the
    original index of new vertex j. Edges keep their order and multiplicity;
    call :meth:`Hypergraph.deduplicated` when distinct edges are needed.
    """
    support = members(sub)
    edges = tuple(compress(e & sub, support) for e in H.edges)
    labels = tuple(H.labels[v] for v in support) if H.labels else None
    return Hypergraph(len(support), edges, labels), tuple(support)


def heavy_threshold(eps, n):
    """Smallest integer edge size counted as heavy: ceil(eps * n), exactly."""
    from .numbers import as_fraction

    frac = as_fraction(eps) * n
    q, r = divmod(frac.numerator, frac.denominator)
    return q + (1 if r else 0)


def heavy_edges(H, eps):
    """Indices of edges with |e| >= eps * n."""
    k = heavy_threshold(eps, H.n)
    return [i for i, e in enumerate(H.edges) if e.bit_count() >= k]
