"""k-strong verification, minimization, chains and exact minimum search.

A defining set ``D`` of ``L`` is k-strong when every trade of ``L`` meets
``D`` at least ``k`` times; equivalently, ``D`` minus any ``k-1`` of its
entries still has ``L`` as its unique completion.  The second form is what
``verify_k_strong`` checks by default, since it needs no trade list.
"""
from __future__ import annotations

import itertools
import logging
import math
import os
import time
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .completion import alternative_completion
from .errors import (BudgetExceeded, KRange, NotASubset, NotKStrong, OddOrder,
                     OrderTooLarge)
from .hitting import exists_hitting_set_of_size, min_hitting_set
from .pls import PLS, LatinSquare, back_circulant, is_back_circulant
from .trades import (MAX_ENUM_ORDER, Bitrade, Intercalate, canonical_trades,
                     difference_trade, intercalates_of_Bn, row_swap_trade,
                     smallest_trade_size, trade_index, trade_through,
                     translate_orbit)

log = logging.getLogger(__name__)

METHODS = ("subsets", "trades", "auto")


def _resolve(method: str, L: PLS) -> str:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if method == "auto":
        return "trades" if L.n <= MAX_ENUM_ORDER else "subsets"
    return method


@dataclass(frozen=True)
class StrengthReport:
    k: int
    verdict: bool
    violating_trade: Optional[Bitrade] = None
    checked_subsets: int = 0

    def __bool__(self) -> bool:
        return self.verdict


def verify_k_strong(D: PLS, L: PLS, k: int, method: str = "subsets") -> StrengthReport:
    """Decide whether ``D`` is a k-strong defining set of ``L``.

    ``method="subsets"`` deletes every ``(k-1)``-subset of ``D`` in
    lexicographic order and asks the completion oracle whether ``L`` is
    still forced, stopping at the first failure.  ``method="trades"``
    instead checks ``|T & D| >= k`` against the full trade list (order <= 5).
    """
    if k < 1:
        raise KRange(f"k must be >= 1, got {k}")
    if not D.issubset(L):
        raise NotASubset("D must be a subset of L")
    method = _resolve(method, L)
    if method == "trades":
        idx = trade_index(LatinSquare.from_pls(L))
        bad = idx.first_violation(D, k)
        if bad is None:
            return StrengthReport(k, True)
        return StrengthReport(k, False, idx.bitrade(bad))
    triples = D.triples
    r = min(k - 1, len(triples))
    checked = 0
    for drop in itertools.combinations(triples, r):
        checked += 1
        L2 = alternative_completion(D.without(drop), L)
        if L2 is not None:
            return StrengthReport(k, False, difference_trade(L, L2), checked)
    return StrengthReport(k, True, None, checked)


class _TradeMemo:
    """Known trades of ``L`` used to refute k-strength without the oracle."""

    def __init__(self, L: PLS):
        self.L = L
        self.bn = is_back_circulant(L)
        self.masks: list[int] = []
        self.trades: list[Bitrade] = []
        self._seen: set = set()

    def add(self, t: Bitrade) -> None:
        group = translate_orbit(t) if self.bn else [t]
        for u in group:
            m = u.T.cell_mask()
            if m not in self._seen:
                self._seen.add(m)
                self.masks.append(m)
                self.trades.append(u)

    def refute(self, dmask: int, k: int, must: int = 0) -> Optional[Bitrade]:
        for m, t in zip(self.masks, self.trades):
            if (m & dmask).bit_count() < k and m & must == must:
                return t
        return None


def _is_k_strong(D: PLS, L: PLS, k: int, method: str, memo: _TradeMemo) -> bool:
    if memo.refute(D.cell_mask(), k) is not None:
        return False
    rep = verify_k_strong(D, L, k, method)
    if not rep.verdict:
        memo.add(rep.violating_trade)
    return rep.verdict


def _trade_through_exactly(L: PLS, D: PLS, k: int, e, method: str, memo: _TradeMemo) -> Optional[Bitrade]:
    n = L.n
    ebit = 1 << (e[0] * n + e[1])
    dmask = D.cell_mask()
    for m, t in zip(memo.masks, memo.trades):
        if m & ebit and (m & dmask).bit_count() <= k:
            return t
    if method == "trades":
        idx = trade_index(LatinSquare.from_pls(L))
        import numpy as np
        hits = idx.hits(D)
        through = (idx.masks & np.uint64(ebit)) != 0
        cand = np.flatnonzero(through & (hits <= k))
        return idx.bitrade(int(cand[0])) if cand.size else None
    return trade_through(L, D, k, e)


def verify_minimal_k_strong(D: PLS, L: PLS, k: int, method: str = "subsets") -> bool:
    """True iff ``D`` is k-strong and no proper subset of it is.

    For each entry ``e`` a trade through ``e`` meeting ``D`` exactly ``k``
    times is sought; one such trade certifies every entry of ``D`` it meets.
    """
    method = _resolve(method, L)
    rep = verify_k_strong(D, L, k, method)
    if not rep.verdict:
        raise NotKStrong(f"D is not {k}-strong")
    memo = _TradeMemo(L)
    certified: set = set()
    for e in D.triples:
        if e in certified:
            continue
        t = _trade_through_exactly(L, D, k, e, method, memo)
        if t is None:
            return False
        memo.add(t)
        certified.update(t.T.intersection(D).triples)
    return True


def minimize_k_strong(D: PLS, L: PLS, k: int, method: str = "subsets",
                      _memo: Optional[_TradeMemo] = None) -> PLS:
    """Drop entries of ``D`` in (row, col) order while k-strength survives.

    One pass suffices: an entry kept once stays necessary, because every
    subset of a set that is not k-strong is not k-strong either.
    """
    method = _resolve(method, L)
    memo = _memo if _memo is not None else _TradeMemo(L)
    if not _is_k_strong(D, L, k, method, memo):
        raise NotKStrong(f"D is not {k}-strong")
    current = D
    for e in D.triples:
        trial = current.without([e])
        if _is_k_strong(trial, L, k, method, memo):
            current = trial
    return current


@dataclass(frozen=True)
class Chain:
    """Nested sets ``sets[0] < sets[1] < ...`` where ``sets[t-1]`` is minimally t-strong."""

    L: LatinSquare
    sets: tuple[PLS, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.sets)

    def __len__(self) -> int:
        return len(self.sets)


def extract_chain(L: PLS, method: str = "auto") -> Chain:
    """Build ``D_1 < ... < D_d`` with ``D_t`` minimally t-strong, ``d`` the smallest trade size."""
    if L.n > MAX_ENUM_ORDER:
        raise OrderTooLarge(f"chain extraction needs the smallest trade size; order <= {MAX_ENUM_ORDER}")
    L = LatinSquare.from_pls(L)
    method = _resolve(method, L)
    d = smallest_trade_size(L)
    memo = _TradeMemo(L)
    top = minimize_k_strong(L, L, d, method, memo)
    sets = [top]
    for t in range(d - 1, 0, -1):
        above = sets[-1]
        start = above.without([above.triples[0]])
        sets.append(minimize_k_strong(start, L, t, method, memo))
    return Chain(L, tuple(reversed(sets)))


class LowerBound(NamedTuple):
    bound: int
    intercalates: tuple[Intercalate, ...]


def intercalate_lower_bound(n: int, k: int) -> LowerBound:
    """``k n^2 / 4`` for even ``n``: the intercalate partition needs ``k`` hits per block."""
    if n % 2:
        raise OddOrder(f"the intercalate bound needs even n, got {n}")
    if not 1 <= k <= 4:
        raise KRange(f"k must lie in 1..4, got {k}")
    blocks = tuple(intercalates_of_Bn(n))
    return LowerBound(k * len(blocks), blocks)


# -- exact search -------------------------------------------------------------

@dataclass
class SearchCertificate:
    L: LatinSquare
    k: int
    optimum: Optional[int]
    lower_bound: int
    witness: Optional[PLS]
    trade_pool: list[Bitrade]
    exact: bool
    symmetry_breaking: bool = False
    rounds: int = 0
    trace: list = field(default_factory=list)
    method: str = "subsets"
    elapsed: float = 0.0

    @property
    def lower_bound_proof(self) -> list[Bitrade]:
        """The pool over which no smaller k-fold hitting set exists."""
        return self.trade_pool


def seed_pool(L: PLS) -> list[Bitrade]:
    """Row-swap trades, plus the intercalate partition when ``L`` is ``B_n`` with ``n`` even."""
    n = L.n
    pool = [row_swap_trade(L, r1, r2) for r1 in range(n) for r2 in range(r1 + 1, n)]
    if n % 2 == 0 and is_back_circulant(L):
        pool += [I.bitrade() for I in intercalates_of_Bn(n)]
    return canonical_trades(pool)


def _mask_to_pls(L: PLS, mask: int) -> PLS:
    n = L.n
    cells = {}
    i = 0
    while mask:
        if mask & 1:
            r, c = divmod(i, n)
            cells[(r, c)] = L[r, c]
        mask >>= 1
        i += 1
    return PLS._trusted(n, cells)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("KSTRONG_WORKERS", "1")))
    except ValueError:
        return 1


def search_min_k_strong(L: PLS, k: int, mode: str = "exact", *, method: str = "auto",
                        incumbent: Optional[PLS] = None, extra_trades: Sequence[Bitrade] = (),
                        orbit: bool = True, symmetry_breaking: bool = False,
                        budget: Optional[int] = None, node_limit: Optional[int] = None,
                        subset_budget: int = 2_000_000) -> SearchCertificate:
    """Minimum k-strong defining set of ``L`` by lazy trade generation.

    Each round solves the hitting-set problem over the current trade pool
    exactly; the optimum is a lower bound.  The optimal candidate is then
    checked; a violating trade (with its translates when ``L`` is ``B_n``
    and ``orbit`` is set) joins the pool and the round repeats.  In
    ``pool-only`` mode the first pool optimum is reported as a bound only.

    ``budget`` caps the number of rounds.
    """
    if mode not in ("exact", "pool-only"):
        raise ValueError(f"mode must be 'exact' or 'pool-only', got {mode!r}")
    if k < 1:
        raise KRange(f"k must be >= 1, got {k}")
    L = LatinSquare.from_pls(L)
    n = L.n
    method = _resolve(method, L)
    bn = is_back_circulant(L)
    if mode == "exact" and method == "subsets" and n > 6 and math.comb(n * n, k - 1) > subset_budget:
        raise BudgetExceeded(f"exact search at order {n} with k={k} exceeds the subset budget",
                             lower=None, upper=None)
    t0 = time.perf_counter()
    pool: dict = {}

    def add(trades):
        for t in trades:
            group = translate_orbit(t) if (orbit and bn) else [t]
            for u in group:
                pool.setdefault((u.T, u.T_mate), u)

    add(seed_pool(L))
    add(extra_trades)
    chosen = 1 if (symmetry_breaking and bn) else 0  # cell (0, 0)

    inc_mask = None
    if incumbent is not None:
        rep = verify_k_strong(incumbent, L, k, method)
        if rep.verdict:
            inc_mask = incumbent.cell_mask()
        else:
            add([rep.violating_trade])

    trace = []
    rounds = 0
    while True:
        rounds += 1
        trades = canonical_trades(pool.values())
        masks = [t.T.cell_mask() for t in trades]
        if any(m.bit_count() < k for m in masks):
            raise KRange(f"L has a trade with fewer than {k} cells; no {k}-strong set exists")
        start_inc = inc_mask
        if chosen and start_inc is not None and not start_inc & chosen:
            start_inc = None
        res = min_hitting_set(masks, k, chosen=chosen, incumbent=start_inc, node_limit=node_limit)
        cand = res.solution
        lb = res.size
        log.debug("round %d: pool=%d lower=%d nodes=%d", rounds, len(trades), lb, res.nodes)
        if mode == "pool-only":
            trace.append((rounds, len(trades), lb, None))
            return SearchCertificate(L, k, None, lb, _mask_to_pls(L, cand), trades, False,
                                     bool(chosen), rounds, trace, method,
                                     time.perf_counter() - t0)
        if inc_mask is not None and cand == start_inc:
            trace.append((rounds, len(trades), lb, True))
            return SearchCertificate(L, k, lb, lb, _mask_to_pls(L, inc_mask), trades, True,
                                     bool(chosen), rounds, trace, method,
                                     time.perf_counter() - t0)
        D = _mask_to_pls(L, cand)
        rep = verify_k_strong(D, L, k, method)
        trace.append((rounds, len(trades), lb, rep.verdict))
        if rep.verdict:
            return SearchCertificate(L, k, lb, lb, D, trades, True, bool(chosen), rounds,
                                     trace, method, time.perf_counter() - t0)
        add([rep.violating_trade])
        if budget is not None and rounds >= budget:
            upper = inc_mask.bit_count() if inc_mask is not None else None
            raise BudgetExceeded(f"no certificate after {rounds} rounds", lower=lb, upper=upper)


def certificate_is_coherent(cert: SearchCertificate, method: str = "auto") -> bool:
    """Re-check a certificate: witness k-strong, size matches, pool admits nothing smaller."""
    if cert.witness is None or cert.optimum is None:
        return False
    if len(cert.witness) != cert.optimum:
        return False
    if not verify_k_strong(cert.witness, cert.L, cert.k, method).verdict:
        return False
    masks = [t.T.cell_mask() for t in cert.trade_pool]
    chosen = 1 if cert.symmetry_breaking else 0
    if cert.optimum == 0:
        return True
    return exists_hitting_set_of_size(masks, cert.k, cert.optimum - 1, chosen=chosen) is None
