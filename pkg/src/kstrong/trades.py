"""Latin bitrades: validation, intercalates, enumeration and extraction."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .completion import alternative_completion
from .errors import (IdenticalSquares, InvalidBitrade, NotASubset, OddOrder,
                     OrderTooLarge)
from .pls import PLS, Check, LatinSquare, Triple, back_circulant, is_back_circulant

MAX_ENUM_ORDER = 5


def validate_bitrade(T: PLS, T_mate: PLS) -> Check:
    """Check the four bitrade axioms, plus non-emptiness of ``T``."""
    if T.n != T_mate.n:
        return Check(False, "orders differ")
    if T.is_empty():
        return Check(False, "T is empty")
    if T.intersection(T_mate):
        return Check(False, "(a) T and its mate share a triple")
    if set(T._cells) != set(T_mate._cells):
        return Check(False, "(b) filled cells differ")
    for axis, name in ((0, "row"), (1, "column")):
        a: dict = {}
        b: dict = {}
        for cell, s in T._cells.items():
            a.setdefault(cell[axis], set()).add(s)
        for cell, s in T_mate._cells.items():
            b.setdefault(cell[axis], set()).add(s)
        if a != b:
            line = min(x for x in set(a) | set(b) if a.get(x) != b.get(x))
            return Check(False, f"({'c' if axis == 0 else 'd'}) symbols differ in {name} {line}")
    return Check(True)


@dataclass(frozen=True)
class Bitrade:
    """A Latin trade ``T`` together with a disjoint mate.

    Construction validates the pair, so every instance is a genuine bitrade.
    """

    T: PLS
    T_mate: PLS

    def __post_init__(self):
        check = validate_bitrade(self.T, self.T_mate)
        if not check:
            raise InvalidBitrade(check.reason)

    @classmethod
    def _trusted(cls, T: PLS, T_mate: PLS) -> "Bitrade":
        obj = object.__new__(cls)
        object.__setattr__(obj, "T", T)
        object.__setattr__(obj, "T_mate", T_mate)
        return obj

    @property
    def n(self) -> int:
        return self.T.n

    @property
    def size(self) -> int:
        return len(self.T)

    def __len__(self) -> int:
        return len(self.T)

    @property
    def cells(self) -> tuple[tuple[int, int], ...]:
        return self.T.cells

    def sort_key(self):
        return (len(self.T), self.T.cells)

    def hits(self, D: PLS) -> int:
        """Number of triples of ``D`` that lie in ``T``."""
        return len(self.T.intersection(D))

    def swap(self, L: PLS) -> PLS:
        """The square ``(L minus T) union T_mate``."""
        cells = dict(L._cells)
        cells.update(self.T_mate._cells)
        return LatinSquare.from_pls(PLS._trusted(L.n, cells))


def difference_trade(L: PLS, L2: PLS) -> Bitrade:
    if L.n != L2.n:
        raise ValueError("squares have different orders")
    if L == L2:
        raise IdenticalSquares("the two squares are equal")
    return Bitrade(L.difference(L2), L2.difference(L))


def row_swap_trade(L: PLS, r1: int, r2: int) -> Bitrade:
    """The trade obtained by exchanging rows ``r1`` and ``r2`` of ``L``.

    Two distinct rows of a Latin square disagree in every column, so the
    trade always covers all ``2n`` cells of the two rows.
    """
    if r1 == r2:
        raise ValueError("rows must differ")
    n = L.n
    T = [(r, c, L[r, c]) for r in (r1, r2) for c in range(n)]
    mate = [(r1, c, L[r2, c]) for c in range(n)] + [(r2, c, L[r1, c]) for c in range(n)]
    return Bitrade(PLS(n, T), PLS(n, mate))


@dataclass(frozen=True)
class Intercalate:
    """The 2x2 subsquare of ``B_n`` on rows ``{i, i+n/2}`` and columns ``{j, j+n/2}``."""

    anchor: tuple[int, int]
    n: int

    def __post_init__(self):
        if self.n % 2:
            raise OddOrder(f"intercalates of B_n need even n, got {self.n}")

    @property
    def cells(self) -> tuple[tuple[int, int], ...]:
        i, j = self.anchor
        h = self.n // 2
        n = self.n
        return tuple(sorted({(i % n, j % n), ((i + h) % n, j % n),
                             (i % n, (j + h) % n), ((i + h) % n, (j + h) % n)}))

    def pls(self) -> PLS:
        n = self.n
        return PLS._trusted(n, {(r, c): (r + c) % n for r, c in self.cells})

    def bitrade(self) -> Bitrade:
        n = self.n
        h = n // 2
        return Bitrade(self.pls(), PLS(n, [(r, c, (r + c + h) % n) for r, c in self.cells]))


def intercalates_of_Bn(n: int) -> list[Intercalate]:
    """The ``(n/2)^2`` intercalates ``I_{i,j}``, ``0 <= i, j < n/2``; they partition ``B_n``."""
    if n % 2:
        raise OddOrder(f"intercalates of B_n need even n, got {n}")
    h = n // 2
    return [Intercalate((i, j), n) for i in range(h) for j in range(h)]


def find_intercalate(L: PLS) -> Optional[Bitrade]:
    """First 2x2 subsquare of ``L`` in lexicographic order, if any."""
    n = L.n
    for r1 in range(n):
        for r2 in range(r1 + 1, n):
            for c1 in range(n):
                for c2 in range(c1 + 1, n):
                    a, b = L[r1, c1], L[r1, c2]
                    if L[r2, c1] == b and L[r2, c2] == a:
                        T = [(r1, c1, a), (r1, c2, b), (r2, c1, b), (r2, c2, a)]
                        M = [(r1, c1, b), (r1, c2, a), (r2, c1, a), (r2, c2, b)]
                        return Bitrade(PLS(n, T), PLS(n, M))
    return None


# -- exhaustive enumeration ---------------------------------------------------

def latin_squares(n: int):
    """Yield every Latin square of order ``n`` as a tuple of row tuples.

    Rows are built in lexicographic order of permutations, so the output
    order is deterministic.
    """
    if n > MAX_ENUM_ORDER:
        raise OrderTooLarge(f"enumeration is limited to order <= {MAX_ENUM_ORDER}")
    perms = list(itertools.permutations(range(n)))
    masks = [sum(1 << (c * n + p[c]) for c in range(n)) for p in perms]
    full = (1 << n) - 1
    rows: list = []

    def rec(used: int):
        r = len(rows)
        if r == n - 1:
            last = []
            for c in range(n):
                free = full & ~(used >> (c * n))
                last.append(free.bit_length() - 1)
            yield tuple(rows) + (tuple(last),)
            return
        for p, m in zip(perms, masks):
            if not used & m:
                rows.append(p)
                yield from rec(used | m)
                rows.pop()

    if n == 1:
        yield ((0,),)
        return
    yield from rec(0)


def count_latin_squares_bruteforce(n: int) -> int:
    """Count Latin squares by filling cells one at a time (no permutation tables)."""
    if n > MAX_ENUM_ORDER:
        raise OrderTooLarge(f"enumeration is limited to order <= {MAX_ENUM_ORDER}")
    grid = [[-1] * n for _ in range(n)]

    def rec(pos: int) -> int:
        if pos == n * n:
            return 1
        r, c = divmod(pos, n)
        total = 0
        for s in range(n):
            if s in grid[r][:c] or any(grid[i][c] == s for i in range(r)):
                continue
            grid[r][c] = s
            total += rec(pos + 1)
        grid[r][c] = -1
        return total

    return rec(0)


class TradeIndex:
    """All trades of a Latin square ``L`` of order at most 5.

    Trades are kept as cell bitmasks (bit ``r*n + c``) together with the
    alternative square they came from, sorted by size and then by cell list.
    """

    def __init__(self, L: PLS):
        if L.n > MAX_ENUM_ORDER:
            raise OrderTooLarge(f"trade enumeration is limited to order <= {MAX_ENUM_ORDER}")
        self.L = LatinSquare.from_pls(L)
        n = L.n
        target = tuple(tuple(L[r, c] for c in range(n)) for r in range(n))
        entries = []
        for sq in latin_squares(n):
            if sq == target:
                continue
            mask = 0
            cells = []
            for r in range(n):
                row, trow = sq[r], target[r]
                for c in range(n):
                    if row[c] != trow[c]:
                        mask |= 1 << (r * n + c)
                        cells.append(r * n + c)
            entries.append((len(cells), tuple(cells), mask, sq))
        entries.sort(key=lambda e: (e[0], e[1]))
        self.sizes = np.array([e[0] for e in entries], dtype=np.int64)
        self.masks = np.array([e[2] for e in entries], dtype=np.uint64)
        self._squares = [e[3] for e in entries]
        self._minimal = None

    def __len__(self) -> int:
        return len(self._squares)

    def bitrade(self, idx: int) -> Bitrade:
        n = self.L.n
        sq = self._squares[idx]
        Lc = self.L._cells
        T = {}
        M = {}
        for r in range(n):
            for c in range(n):
                if sq[r][c] != Lc[(r, c)]:
                    T[(r, c)] = Lc[(r, c)]
                    M[(r, c)] = sq[r][c]
        return Bitrade._trusted(PLS._trusted(n, T), PLS._trusted(n, M))

    def hits(self, D: PLS) -> np.ndarray:
        """``|T & D|`` for every trade, where ``D`` must be a subset of ``L``."""
        dm = np.uint64(D.cell_mask())
        return np.bitwise_count(self.masks & dm).astype(np.int64)

    def first_violation(self, D: PLS, k: int) -> Optional[int]:
        """Index of the first trade meeting ``D`` fewer than ``k`` times."""
        bad = np.flatnonzero(self.hits(D) < k)
        return int(bad[0]) if bad.size else None

    def minimal_indices(self) -> list[int]:
        """Indices of trades whose cell set contains no smaller trade's cell set."""
        if self._minimal is None:
            keep: list[int] = []
            kept = np.zeros(0, dtype=np.uint64)
            for idx, m in enumerate(self.masks):
                if kept.size and np.any((kept & m) == kept):
                    # equal masks are distinct mates of the same minimal trade
                    if not np.any(kept == m):
                        continue
                keep.append(idx)
                kept = np.append(kept, m)
            self._minimal = keep
        return self._minimal


@lru_cache(maxsize=8)
def trade_index(L: LatinSquare) -> TradeIndex:
    return TradeIndex(L)


def enumerate_trades(L: PLS, minimal_only: bool = False) -> list[Bitrade]:
    """Every bitrade ``(L - L2, L2 - L)`` over Latin squares ``L2 != L``.

    With ``minimal_only`` the result keeps only trades that contain no
    strictly smaller trade.  Output is sorted by size, then cell list.
    """
    idx = trade_index(LatinSquare.from_pls(L))
    which = idx.minimal_indices() if minimal_only else range(len(idx))
    return [idx.bitrade(i) for i in which]


def smallest_trade_size(L: PLS) -> int:
    """Size of the smallest trade in ``L``.

    Any intercalate gives the absolute minimum 4; otherwise the answer needs
    exhaustive enumeration, which is only available up to order 5.
    """
    if L.n >= 2 and L.n % 2 == 0 and is_back_circulant(L):
        return 4
    if L.n <= MAX_ENUM_ORDER:
        idx = trade_index(LatinSquare.from_pls(L))
        if len(idx) == 0:
            raise ValueError("a Latin square of order 1 has no trades")
        return int(idx.sizes[0])
    if find_intercalate(L) is not None:
        return 4
    raise OrderTooLarge(f"smallest trade size needs enumeration, limited to order <= {MAX_ENUM_ORDER}")


def trade_through(L: PLS, D: PLS, k: int, e: Optional[Triple] = None) -> Optional[Bitrade]:
    """A trade meeting ``D`` at most ``k`` times (and containing ``e`` if given).

    Deletes ``(k-1)``-subsets of ``D`` in lexicographic order (also deleting
    ``e`` and forbidding its symbol when ``e`` is given) and returns the first
    trade read off an alternative completion, or None.
    """
    if not D.issubset(L):
        raise NotASubset("D must be a subset of L")
    if e is not None:
        e = Triple(*e)
        if e not in D:
            raise NotASubset(f"{e} is not in D")
        rest = [t for t in D.triples if t != e]
        forbid = {(e.row, e.col): e.sym}
        base = D.without([e])
    else:
        rest = list(D.triples)
        forbid = None
        base = D
    r = max(0, min(k - 1, len(rest)))
    for drop in itertools.combinations(rest, r):
        L2 = alternative_completion(base.without(drop), L, forbid)
        if L2 is not None:
            return difference_trade(L, L2)
    return None


def canonical_trades(trades) -> list[Bitrade]:
    """Deduplicate and sort trades by size, then cell list, then mate."""
    seen = {}
    for t in trades:
        key = (t.T, t.T_mate)
        if key not in seen:
            seen[key] = t
    return sorted(seen.values(), key=lambda t: (len(t.T), t.T.cells, t.T_mate.triples))


def shifted_trade(t: Bitrade, a: int, b: int) -> Bitrade:
    from .pls import shift
    return Bitrade._trusted(shift(t.T, a, b, check=False), shift(t.T_mate, a, b, check=False))


def translate_orbit(t: Bitrade) -> list[Bitrade]:
    """All ``n^2`` translates of a trade of ``B_n`` (with repeats removed)."""
    n = t.n
    return canonical_trades(shifted_trade(t, a, b) for a in range(n) for b in range(n))


def find_mate(T: PLS, L: Optional[PLS] = None) -> Optional[PLS]:
    """Lexicographically first disjoint mate of ``T``, or None if ``T`` is no trade.

    Each cell receives a symbol from its row's symbol set that also belongs
    to its column's symbol set, differs from the original, and keeps rows
    and columns free of repeats.
    """
    n = T.n
    cells = T.cells
    row_syms: dict = {}
    col_syms: dict = {}
    for (r, c), s in T._cells.items():
        row_syms.setdefault(r, set()).add(s)
        col_syms.setdefault(c, set()).add(s)
    choice: dict = {}
    used_row: dict = {r: set() for r in row_syms}
    used_col: dict = {c: set() for c in col_syms}

    def rec(i: int) -> bool:
        if i == len(cells):
            return True
        r, c = cells[i]
        for s in sorted(row_syms[r] & col_syms[c]):
            if s == T[r, c] or s in used_row[r] or s in used_col[c]:
                continue
            choice[(r, c)] = s
            used_row[r].add(s)
            used_col[c].add(s)
            if rec(i + 1):
                return True
            used_row[r].discard(s)
            used_col[c].discard(s)
            del choice[(r, c)]
        return False

    if not cells or not rec(0):
        return None
    return PLS(n, [(r, c, s) for (r, c), s in choice.items()])


def trade_from_cells(n: int, cells, L: Optional[PLS] = None) -> Bitrade:
    """Bitrade on the given cells of ``L`` (default ``B_n``) with the first mate found."""
    L = back_circulant(n) if L is None else L
    T = PLS(n, [(r % n, c % n, L[r % n, c % n]) for r, c in cells])
    mate = find_mate(T)
    if mate is None:
        raise InvalidBitrade("cells carry no Latin trade")
    return Bitrade(T, mate)
