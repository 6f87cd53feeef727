from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from tnet.errors import Infeasible, TooLarge
from tnet.exact import greedy_hitting_set, hitting_set, min_hitting_set


def brute_minimum(constraints, m):
    for k in range(m + 1):
        for pick in combinations(range(m), k):
            mask = sum(1 << j for j in pick)
            if all(c & mask for c in constraints):
                return k
    raise AssertionError("unreachable")


def hits(constraints, elements):
    mask = sum(1 << j for j in elements)
    return all(c & mask for c in constraints)


instances = st.integers(min_value=1, max_value=9).flatmap(
    lambda m: st.tuples(st.just(m), st.lists(
        st.integers(min_value=1, max_value=(1 << m) - 1), min_size=1, max_size=12)))


@given(instances)
def test_min_hitting_set_is_minimum(inst):
    m, cons = inst
    sol = min_hitting_set(cons, m)
    assert hits(cons, sol)
    assert len(sol) == brute_minimum(cons, m)


@given(instances)
def test_greedy_is_a_hitting_set(inst):
    m, cons = inst
    sol = greedy_hitting_set(cons, m)
    assert hits(cons, sol)
    assert len(sol) >= brute_minimum(cons, m)


def test_empty_constraint_is_infeasible():
    with pytest.raises(Infeasible):
        min_hitting_set([1, 0], 2)
    with pytest.raises(Infeasible):
        greedy_hitting_set([0], 1)


def test_no_constraints():
    assert min_hitting_set([], 5) == []


def test_node_budget_falls_back_to_greedy():
    # every pair of 12 elements: a hitting set may skip only one element
    cons = [(1 << a) | (1 << b) for a, b in combinations(range(12), 2)]
    with pytest.raises(TooLarge):
        min_hitting_set(cons, 12, node_budget=2)
    sol, exact = hitting_set(cons, 12, node_budget=2)
    assert not exact and hits(cons, sol)
    sol, exact = hitting_set(cons, 12)
    assert exact and len(sol) == 11
