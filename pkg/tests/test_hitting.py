import itertools

import pytest
from hypothesis import given, strategies as st

from kstrong.errors import BudgetExceeded
from kstrong.hitting import (exists_hitting_set_of_size, greedy_hitting_set, min_hitting_set,
                             packing_bound)


def _brute_min(constraints, k, universe):
    for size in range(universe + 1):
        for combo in itertools.combinations(range(universe), size):
            m = sum(1 << b for b in combo)
            if all((c & m).bit_count() >= k for c in constraints):
                return size
    return None


instances = st.integers(4, 9).flatmap(lambda u: st.tuples(
    st.just(u),
    st.lists(st.integers(1, (1 << u) - 1), min_size=1, max_size=8),
    st.integers(1, 3)))


@given(instances)
def test_matches_bruteforce(inst):
    u, cons, k = inst
    cons = [c for c in cons if c.bit_count() >= k]
    if not cons:
        return
    res = min_hitting_set(cons, k)
    assert res.size == _brute_min(cons, k, u)
    assert all((c & res.solution).bit_count() >= k for c in cons)
    assert packing_bound(cons, k) <= res.size
    assert exists_hitting_set_of_size(cons, k, res.size - 1) is None


@given(instances)
def test_greedy_is_feasible(inst):
    u, cons, k = inst
    cons = [c for c in cons if c.bit_count() >= k]
    S = greedy_hitting_set(cons, k)
    assert all((c & S).bit_count() >= k for c in cons)


def test_disjoint_packing_bound_is_tight():
    cons = [0b1111 << (4 * i) for i in range(5)]
    assert packing_bound(cons, 3) == 15
    assert min_hitting_set(cons, 3).size == 15


def test_chosen_and_excluded():
    cons = [0b0111, 0b1110]
    assert min_hitting_set(cons, 1).size == 1
    res = min_hitting_set(cons, 1, excluded=0b0110)
    assert res.solution & 0b0110 == 0 and res.size == 2
    res = min_hitting_set(cons, 1, chosen=0b0001)
    assert res.solution & 1 and res.size == 2


def test_infeasible():
    with pytest.raises(ValueError):
        min_hitting_set([0b11], 3)
    assert exists_hitting_set_of_size([0b11], 3, 5) is None


def test_incumbent_is_returned_when_optimal():
    cons = [0b11, 0b1100]
    res = min_hitting_set(cons, 1, incumbent=0b0101)
    assert res.size == 2 and res.solution == 0b0101


def test_node_limit():
    cons = [((1 << 30) - 1) ^ (1 << i) for i in range(30)]
    with pytest.raises(BudgetExceeded):
        min_hitting_set(cons, 25, node_limit=5, incumbent=(1 << 30) - 1)
