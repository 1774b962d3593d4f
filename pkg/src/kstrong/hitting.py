"""Exact minimum multiset hitting set by branch and bound.

Given constraint sets ``C_1, ..., C_m`` over ground elements ``0..N-1``
(as int bitmasks), find a smallest set ``S`` with ``|S & C_j| >= k`` for
every ``j``.  Lower bounds come from packing constraints whose open
elements are pairwise disjoint; each contributes its outstanding demand.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import BudgetExceeded


@dataclass
class HittingResult:
    solution: int
    size: int
    nodes: int
    lower_bound: int = field(default=0)


def _popcount(x: int) -> int:
    return x.bit_count()


def greedy_hitting_set(constraints: Sequence[int], k: int, start: int = 0, excluded: int = 0) -> int:
    """Repeatedly add the element lying in the most deficient constraints."""
    S = start
    while True:
        deficient = [c for c in constraints if _popcount(c & S) < k]
        if not deficient:
            return S
        counts: dict[int, int] = {}
        for c in deficient:
            m = c & ~S & ~excluded
            while m:
                b = m & -m
                m ^= b
                counts[b] = counts.get(b, 0) + 1
        if not counts:
            raise ValueError("infeasible: a constraint has fewer than k elements")
        best = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))[0]
        S |= best


def packing_bound(constraints: Sequence[int], k: int, chosen: int = 0, excluded: int = 0) -> int:
    """Lower bound on the number of extra elements needed beyond ``chosen``."""
    items = []
    for c in constraints:
        need = k - _popcount(c & chosen)
        if need <= 0:
            continue
        avail = c & ~(chosen | excluded)
        items.append((-need, _popcount(avail), avail, need))
    items.sort(key=lambda t: (t[0], t[1]))
    used = 0
    total = 0
    for _, _, avail, need in items:
        if not avail & used:
            used |= avail
            total += need
    return total


class _Solver:
    """DFS accepting only solutions strictly smaller than ``limit``."""

    def __init__(self, constraints, k, limit, node_limit):
        self.cons = list(dict.fromkeys(constraints))
        self.k = k
        self.limit = limit
        self.node_limit = node_limit
        self.nodes = 0
        self.best = None

    def dfs(self, chosen: int, excluded: int) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise BudgetExceeded("hitting-set node limit reached")
        k = self.k
        size = _popcount(chosen)
        if size >= self.limit:
            return
        items = []
        for c in self.cons:
            need = k - _popcount(c & chosen)
            if need <= 0:
                continue
            avail = c & ~(chosen | excluded)
            a = _popcount(avail)
            if a < need:
                return
            items.append((a - need, -need, a, avail, need))
        if not items:
            self.best = chosen
            self.limit = size
            return
        items.sort(key=lambda t: (t[1], t[2]))
        used = 0
        lb = 0
        for _, _, _, avail, need in items:
            if not avail & used:
                used |= avail
                lb += need
        if size + lb >= self.limit:
            return
        # tightest constraint, then its element lying in most deficient constraints
        tight = min(items, key=lambda t: (t[0], t[1]))
        counts: dict[int, int] = {}
        m = tight[3]
        while m:
            b = m & -m
            m ^= b
            counts[b] = 0
        for it in items:
            av = it[3]
            for b in counts:
                if av & b:
                    counts[b] += 1
        bit = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))[0]
        self.dfs(chosen | bit, excluded)
        self.dfs(chosen, excluded | bit)


def min_hitting_set(constraints: Sequence[int], k: int, *, chosen: int = 0, excluded: int = 0,
                    incumbent: Optional[int] = None, node_limit: Optional[int] = None) -> HittingResult:
    """Exact optimum; ``incumbent`` (a feasible set) seeds the upper bound.

    Raises ValueError when some constraint has fewer than ``k`` admissible elements.
    """
    for c in constraints:
        if _popcount(c & ~excluded) < k:
            raise ValueError("infeasible: a constraint has fewer than k admissible elements")
    if incumbent is None:
        incumbent = greedy_hitting_set(constraints, k, chosen, excluded)
    solver = _Solver(constraints, k, _popcount(incumbent), node_limit)
    solver.dfs(chosen, excluded)
    best = incumbent if solver.best is None else solver.best
    size = _popcount(best)
    return HittingResult(solution=best, size=size, nodes=solver.nodes, lower_bound=size)


def exists_hitting_set_of_size(constraints: Sequence[int], k: int, size: int, *,
                               chosen: int = 0, excluded: int = 0,
                               node_limit: Optional[int] = None) -> Optional[int]:
    """A hitting set with at most ``size`` elements, or None when none exists."""
    for c in constraints:
        if _popcount(c & ~excluded) < k:
            return None
    solver = _Solver(constraints, k, size + 1, node_limit)
    solver.dfs(chosen, excluded)
    return solver.best
