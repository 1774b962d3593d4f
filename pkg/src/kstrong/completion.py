"""Unique-completion oracle for partial Latin squares.

The search fills forced cells (a cell with one admissible symbol, or a
row/column symbol with one admissible cell) and then branches on the
lowest most-constrained cell, trying symbols in increasing order.  The
branching order is deterministic, so the witnesses returned for a
``MULTIPLE`` outcome are reproducible.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import NotASubset
from .pls import PLS, LatinSquare


class CountClass(enum.Enum):
    NONE = 0
    UNIQUE = 1
    MULTIPLE = 2


@dataclass(frozen=True)
class CompletionOutcome:
    count_class: CountClass
    witnesses: tuple[LatinSquare, ...] = ()

    @property
    def unique(self) -> bool:
        return self.count_class is CountClass.UNIQUE

    @property
    def second_witness(self) -> Optional[LatinSquare]:
        return self.witnesses[1] if self.count_class is CountClass.MULTIPLE else None


def _solve(n: int, cells: dict, limit: Optional[int], forbid: Optional[dict] = None) -> list:
    """Return up to ``limit`` completions of ``cells`` as flat symbol lists.

    ``forbid`` maps a cell to a symbol it may not take.
    """
    full = (1 << n) - 1
    N = n * n
    g = [-1] * N
    rows = [0] * n
    cols = [0] * n
    ban = [0] * N
    if forbid:
        for (r, c), s in forbid.items():
            ban[r * n + c] |= 1 << s
    for (r, c), s in cells.items():
        bit = 1 << s
        if rows[r] & bit or cols[c] & bit or ban[r * n + c] & bit:
            return []
        g[r * n + c] = s
        rows[r] |= bit
        cols[c] |= bit
    out: list = []
    _search(n, full, g, rows, cols, ban, limit, out)
    return out


def _search(n, full, g, rows, cols, ban, limit, out) -> None:
    N = n * n
    while True:
        placed = False
        cand = {}
        for idx in range(N):
            if g[idx] >= 0:
                continue
            r, c = divmod(idx, n)
            m = full & ~(rows[r] | cols[c] | ban[idx])
            if not m:
                return
            if not m & (m - 1):
                s = m.bit_length() - 1
                g[idx] = s
                rows[r] |= m
                cols[c] |= m
                placed = True
            else:
                cand[idx] = m
        if placed:
            continue
        if not cand:
            out.append(g[:])
            return
        # hidden singles: a missing symbol with exactly one admissible cell
        hit = None
        for r in range(n):
            once = multi = 0
            base = r * n
            for c in range(n):
                m = cand.get(base + c)
                if m:
                    multi |= once & m
                    once |= m
            missing = full & ~rows[r]
            if missing & ~once:
                return
            u = once & ~multi & missing
            if u:
                bit = u & -u
                for c in range(n):
                    m = cand.get(base + c)
                    if m and m & bit:
                        hit = (base + c, bit)
                        break
                break
        if hit is None:
            for c in range(n):
                once = multi = 0
                for r in range(n):
                    m = cand.get(r * n + c)
                    if m:
                        multi |= once & m
                        once |= m
                missing = full & ~cols[c]
                if missing & ~once:
                    return
                u = once & ~multi & missing
                if u:
                    bit = u & -u
                    for r in range(n):
                        m = cand.get(r * n + c)
                        if m and m & bit:
                            hit = (r * n + c, bit)
                            break
                    break
        if hit is None:
            break
        idx, bit = hit
        r, c = divmod(idx, n)
        g[idx] = bit.bit_length() - 1
        rows[r] |= bit
        cols[c] |= bit

    best = -1
    best_count = n + 1
    for idx, m in cand.items():
        k = m.bit_count()
        if k < best_count or (k == best_count and idx < best):
            best, best_count = idx, k
    r, c = divmod(best, n)
    m = cand[best]
    while m:
        bit = m & -m
        m ^= bit
        g2 = g[:]
        g2[best] = bit.bit_length() - 1
        rows2 = rows[:]
        cols2 = cols[:]
        rows2[r] |= bit
        cols2[c] |= bit
        _search(n, full, g2, rows2, cols2, ban, limit, out)
        if limit is not None and len(out) >= limit:
            return


def _to_square(n: int, flat: Sequence[int]) -> LatinSquare:
    return LatinSquare(n, [(i // n, i % n, s) for i, s in enumerate(flat)], check=False)


def completions(P: PLS, limit: Optional[int] = 2, forbid: Optional[dict] = None) -> list[LatinSquare]:
    """Up to ``limit`` Latin squares containing ``P``, in search order."""
    sols = _solve(P.n, P._cells, limit, forbid)
    return [_to_square(P.n, s) for s in sols]


def count_completions(P: PLS, limit: int = 2, forbid: Optional[dict] = None) -> CompletionOutcome:
    """Classify the number of completions of ``P`` as none, unique or multiple."""
    if limit < 2:
        raise ValueError("limit must be at least 2")
    sols = completions(P, 2, forbid)
    if not sols:
        return CompletionOutcome(CountClass.NONE)
    if len(sols) == 1:
        return CompletionOutcome(CountClass.UNIQUE, (sols[0],))
    return CompletionOutcome(CountClass.MULTIPLE, (sols[0], sols[1]))


def is_defining_set(D: PLS, L: PLS) -> bool:
    if not D.issubset(L):
        raise NotASubset("defining-set test needs D to be a subset of L")
    return len(_solve(D.n, D._cells, 2)) == 1


def alternative_completion(D: PLS, L: PLS, forbid: Optional[dict] = None) -> Optional[LatinSquare]:
    """A completion of ``D`` different from ``L``, or None if there is none.

    ``D`` is assumed to be a subset of ``L``.
    """
    if forbid:
        sols = _solve(D.n, D._cells, 1, forbid)
    else:
        sols = _solve(D.n, D._cells, 2)
    target = [L._cells[(i // D.n, i % D.n)] for i in range(D.n * D.n)]
    for s in sols:
        if s != target:
            return _to_square(D.n, s)
    return None


class ReplayResult(NamedTuple):
    ok: bool
    failed_at: Optional[int]
    square: Optional[PLS]

    def __bool__(self) -> bool:
        return self.ok


def replay_forced(P: PLS, seq: Iterable, target: Optional[PLS] = None) -> ReplayResult:
    """Fill the cells of ``seq`` in order, each by its unique admissible symbol.

    Fails (with the index of the offending cell) if a cell admits zero or
    several symbols, if ``seq`` does not cover exactly the empty cells, or
    if the result differs from ``target``.
    """
    n = P.n
    full = (1 << n) - 1
    rows = [0] * n
    cols = [0] * n
    cells = dict(P._cells)
    for (r, c), s in cells.items():
        rows[r] |= 1 << s
        cols[c] |= 1 << s
    seq = [tuple(x) for x in seq]
    for i, (r, c) in enumerate(seq):
        if (r, c) in cells or not (0 <= r < n and 0 <= c < n):
            return ReplayResult(False, i, None)
        m = full & ~(rows[r] | cols[c])
        if m == 0 or m & (m - 1):
            return ReplayResult(False, i, None)
        cells[(r, c)] = m.bit_length() - 1
        rows[r] |= m
        cols[c] |= m
    result = PLS._trusted(n, cells)
    if len(cells) != n * n:
        return ReplayResult(False, len(seq), result)
    if target is not None and result != target:
        return ReplayResult(False, len(seq), result)
    return ReplayResult(True, None, LatinSquare.from_pls(result))
