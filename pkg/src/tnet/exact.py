"""Minimum hitting sets by branch and bound, plus the greedy heuristic.

A hitting-set instance is a list of constraints, each an int bitmask over
element indices 0..m-1; a solution is a set of elements meeting every
constraint. Nets reduce to this with heavy edges as constraints and
candidate t-subsets as elements.
"""

import numpy as np

from .errors import Infeasible, TooLarge
from .hypergraph import members

DEFAULT_NODE_BUDGET = 5_000_000
# quadratic reductions are skipped above this many constraints or elements
REDUCE_LIMIT = 3000


def _element_masks(constraints, m):
    out = [0] * m
    for c, mask in enumerate(constraints):
        for j in members(mask):
            out[j] |= 1 << c
    return out


def greedy_hitting_set(constraints, m=None):
    """Repeatedly take the element meeting most unhit constraints (lowest index on ties)."""
    if any(c == 0 for c in constraints):
        raise Infeasible("a constraint has no element")
    if m is None:
        m = max((c.bit_length() for c in constraints), default=0)
    elem = _element_masks(constraints, m)
    todo = (1 << len(constraints)) - 1
    chosen = []
    while todo:
        best, best_gain = -1, 0
        for j in range(m):
            gain = (elem[j] & todo).bit_count()
            if gain > best_gain:
                best, best_gain = j, gain
        chosen.append(best)
        todo &= ~elem[best]
    return sorted(chosen)


def _reduce(constraints, m):
    """Drop duplicate and superset constraints, then dominated elements.

    Removing a constraint that contains another loses nothing: any hitting
    set of the smaller one hits it. An element whose constraint set is a
    subset of another element's can be swapped for that element.
    """
    uniq = sorted(set(constraints), key=lambda c: (c.bit_count(), c))
    if len(uniq) > REDUCE_LIMIT:
        kept = uniq
    else:
        kept = []
        for c in uniq:
            if not any(k & c == k for k in kept):
                kept.append(c)
    if m > REDUCE_LIMIT:
        elem = _element_masks(kept, m)
        alive = [j for j in range(m) if elem[j]]
        mask = 0
        for j in alive:
            mask |= 1 << j
        return [c & mask for c in kept], alive
    # miss[j, i] counts constraints holding j but not i; zero means i
    # dominates j, and ties between equal columns keep the lower index
    E = np.zeros((m, len(kept)), dtype=np.float32)
    for c, mask in enumerate(kept):
        E[members(mask), c] = 1.0
    miss = E @ (1.0 - E).T
    sub = miss == 0
    equal = sub & sub.T
    later = np.arange(m)[None, :] < np.arange(m)[:, None]
    beaten = sub & (~equal | later)
    np.fill_diagonal(beaten, False)
    used = E.any(axis=1)
    alive = [int(j) for j in np.flatnonzero(used & ~beaten.any(axis=1))]
    keep_mask = 0
    for j in alive:
        keep_mask |= 1 << j
    return [c & keep_mask for c in kept], alive


def min_hitting_set(constraints, m=None, node_budget=DEFAULT_NODE_BUDGET):
    """A minimum-cardinality hitting set, as a sorted list of element indices.

    Depth-first branch and bound: branch on the unhit constraint with the
    fewest available elements, forbidding earlier siblings in later
    branches; prune with a packing bound (unhit constraints with pairwise
    disjoint available elements each need their own element).
    Raises ``TooLarge`` when more than ``node_budget`` nodes are explored.
    """
    if not constraints:
        return []
    if any(c == 0 for c in constraints):
        raise Infeasible("a constraint has no element")
    if m is None:
        m = max(c.bit_length() for c in constraints)
    cons, _ = _reduce(constraints, m)
    nc = len(cons)
    elem = _element_masks(cons, m)
    best = greedy_hitting_set(cons, m)
    state = {"best": best, "nodes": 0}

    def lower_bound(todo, avail):
        used = 0
        lb = 0
        pending = []
        rest = todo
        while rest:
            low = rest & -rest
            c = low.bit_length() - 1
            rest ^= low
            pending.append(cons[c] & avail)
        pending.sort(key=lambda a: a.bit_count())
        for a in pending:
            if a & used == 0:
                used |= a
                lb += 1
        return lb

    def search(todo, avail, chosen):
        state["nodes"] += 1
        if state["nodes"] > node_budget:
            raise TooLarge(f"hitting-set search exceeded {node_budget} nodes")
        if not todo:
            if len(chosen) < len(state["best"]):
                state["best"] = sorted(chosen)
            return
        if len(chosen) + lower_bound(todo, avail) >= len(state["best"]):
            return
        pick, pick_avail, pick_size = -1, 0, m + 1
        rest = todo
        while rest:
            low = rest & -rest
            c = low.bit_length() - 1
            rest ^= low
            a = cons[c] & avail
            size = a.bit_count()
            if size < pick_size:
                pick, pick_avail, pick_size = c, a, size
                if size <= 1:
                    break
        if pick_size == 0:
            return
        options = members(pick_avail)
        options.sort(key=lambda j: (-(elem[j] & todo).bit_count(), j))
        for j in options:
            chosen.append(j)
            search(todo & ~elem[j], avail, chosen)
            chosen.pop()
            avail &= ~(1 << j)

    search((1 << nc) - 1, (1 << m) - 1, [])
    return sorted(state["best"])


def hitting_set(constraints, m=None, node_budget=200_000):
    """Exact when the search fits in ``node_budget``, greedy otherwise.

    Returns ``(elements, exact)``.
    """
    try:
        return min_hitting_set(constraints, m, node_budget), True
    except TooLarge:
        return greedy_hitting_set(constraints, m), False
