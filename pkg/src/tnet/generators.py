"""Abstract hypergraph generators used by the CLI, the tests and the benchmark."""

import numpy as np

from .hypergraph import Hypergraph, from_edge_lists, mask_of


def interval_hypergraph(n, proper=False):
    """Every contiguous run [a, b] of 0..n-1; ``proper`` drops the full run."""
    edges = [mask_of(range(a, b + 1)) for a in range(n) for b in range(a, n)]
    if proper:
        edges = [e for e in edges if e != (1 << n) - 1]
    return Hypergraph(n, tuple(edges))


def random_hypergraph(n, m, seed=0, density=0.3, dedup=True):
    """m edges, each vertex present independently with probability ``density``."""
    rng = np.random.default_rng(seed)
    rows = rng.random((m, n)) < density
    edges = [mask_of(np.flatnonzero(r)) for r in rows]
    H = Hypergraph(n, tuple(edges))
    return H.deduplicated() if dedup else H


def random_small_hypergraph(n, seed=0, max_edges=None):
    """Random family of distinct subsets of an n-set with a random edge count."""
    rng = np.random.default_rng(seed)
    cap = max_edges or min(2 ** n, 4 * n)
    m = int(rng.integers(1, cap + 1))
    edges = {int(x) for x in rng.integers(0, 2 ** n, size=m)}
    return Hypergraph(n, tuple(sorted(edges)))


def chain_hypergraph(n):
    """Nested prefixes {0..b-1}; VC-dimension 1."""
    return Hypergraph(n, tuple(mask_of(range(b)) for b in range(1, n + 1)))


def random_tree(n, seed=0):
    """Parent array of a random recursive tree rooted at 0."""
    rng = np.random.default_rng(seed)
    return [-1] + [int(rng.integers(0, v)) for v in range(1, n)]


def tree_path_hypergraph(n, seed=0):
    """Root-to-node paths of a random tree; VC-dimension 1.

    Two vertices on a common path are ancestor and descendant, so no path
    contains the descendant without the ancestor.
    """
    parent = random_tree(n, seed)
    paths = []
    for v in range(n):
        m, x = 0, v
        while x >= 0:
            m |= 1 << x
            x = parent[x]
        paths.append(m)
    return Hypergraph(n, tuple(sorted(set(paths))))


def disjoint_copies(H, copies):
    """``copies`` disjoint copies of H side by side."""
    edges = []
    for c in range(copies):
        edges.extend(e << (c * H.n) for e in H.edges)
    return Hypergraph(H.n * copies, tuple(edges))


def example_three():
    """3 vertices a, b, c with edges {a}, {b, c}, {a, c}, {a, b, c}."""
    return from_edge_lists(3, [[0], [1, 2], [0, 2], [0, 1, 2]], labels=("a", "b", "c"))


def disjoint_blocks(n_blocks, size):
    return Hypergraph(n_blocks * size,
                      tuple(mask_of(range(b * size, (b + 1) * size)) for b in range(n_blocks)))
