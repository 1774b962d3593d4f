"""Partial Latin squares, the back-circulant square and its symmetries.

A partial Latin square (PLS) of order ``n`` is stored as a mapping from
cells ``(row, col)`` to symbols, all in ``range(n)``.  Values are immutable;
every operation returns a new object.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .errors import ContainmentViolated, IndexRange, InvalidPLS


class Triple(NamedTuple):
    row: int
    col: int
    sym: int


class Check(NamedTuple):
    """Boolean verdict carrying the reason for a failure."""

    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


class Shift(NamedTuple):
    """Translation ``(a, b)``: ``(i, j; k) -> (i+a, j+b; k+a+b)`` mod n."""

    a: int
    b: int

    def inverse(self) -> "Shift":
        return Shift(-self.a, -self.b)


class PLS:
    """An immutable partial Latin square.

    >>> P = PLS(3, [(0, 0, 0), (1, 1, 2)])
    >>> len(P), P[1, 1], (0, 0, 0) in P
    (2, 2, True)
    """

    __slots__ = ("n", "_cells", "_hash")

    def __init__(self, n: int, triples: Iterable = (), *, check: bool = True):
        if n < 1:
            raise InvalidPLS(f"order must be >= 1, got {n}")
        self.n = int(n)
        cells: dict[tuple[int, int], int] = {}
        for t in triples:
            r, c, s = (int(v) for v in t)
            if check:
                if not (0 <= r < n and 0 <= c < n and 0 <= s < n):
                    raise InvalidPLS(f"triple {(r, c, s)} out of range for order {n}")
                if (r, c) in cells and cells[(r, c)] != s:
                    raise InvalidPLS(f"cell {(r, c)} filled twice")
            cells[(r, c)] = s
        self._cells = cells
        self._hash = None
        if check:
            self._check_latin()

    def _check_latin(self) -> None:
        seen_row = set()
        seen_col = set()
        for (r, c), s in self._cells.items():
            if (r, s) in seen_row:
                raise InvalidPLS(f"symbol {s} repeated in row {r}")
            if (c, s) in seen_col:
                raise InvalidPLS(f"symbol {s} repeated in column {c}")
            seen_row.add((r, s))
            seen_col.add((c, s))

    @classmethod
    def _trusted(cls, n: int, cells: dict) -> "PLS":
        obj = cls.__new__(cls)
        obj.n = n
        obj._cells = cells
        obj._hash = None
        return obj

    @classmethod
    def from_rows(cls, rows, empty=None) -> "PLS":
        """Build from a list of rows; ``empty`` (default None) marks blanks."""
        n = len(rows)
        triples = [(r, c, s) for r, row in enumerate(rows)
                   for c, s in enumerate(row) if s is not empty and s != "."]
        return cls(n, triples)

    # -- container protocol -------------------------------------------------
    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples)

    def __contains__(self, t) -> bool:
        r, c, s = t
        return self._cells.get((r, c)) == s

    def __getitem__(self, cell) -> int:
        return self._cells[tuple(cell)]

    def get(self, cell, default=None):
        return self._cells.get(tuple(cell), default)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PLS):
            return NotImplemented
        return self.n == other.n and self._cells == other._cells

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._cells.items())))
        return self._hash

    def __le__(self, other: "PLS") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "PLS") -> bool:
        return self.issubset(other) and len(self) < len(other)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, size={len(self)})"

    @property
    def triples(self) -> tuple[Triple, ...]:
        return tuple(Triple(r, c, s) for (r, c), s in sorted(self._cells.items()))

    @property
    def cells(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._cells))

    def is_full(self) -> bool:
        return len(self._cells) == self.n * self.n

    def is_empty(self) -> bool:
        return not self._cells

    # -- set algebra ---------------------------------------------------------
    def issubset(self, other: "PLS") -> bool:
        if self.n != other.n:
            return False
        oc = other._cells
        return all(oc.get(cell) == s for cell, s in self._cells.items())

    def union(self, other: "PLS") -> "PLS":
        return PLS(self.n, list(self.triples) + list(other.triples))

    def difference(self, other: "PLS") -> "PLS":
        oc = other._cells
        return PLS._trusted(self.n, {cell: s for cell, s in self._cells.items()
                                     if oc.get(cell) != s})

    def intersection(self, other: "PLS") -> "PLS":
        oc = other._cells
        return PLS._trusted(self.n, {cell: s for cell, s in self._cells.items()
                                     if oc.get(cell) == s})

    def without(self, triples: Iterable) -> "PLS":
        cells = dict(self._cells)
        for r, c, s in triples:
            if cells.get((r, c)) == s:
                del cells[(r, c)]
        return PLS._trusted(self.n, cells)

    def with_triples(self, triples: Iterable) -> "PLS":
        return PLS(self.n, list(self.triples) + [tuple(t) for t in triples])

    def cell_mask(self) -> int:
        """Bitmask with bit ``r*n + c`` set for every filled cell."""
        n = self.n
        m = 0
        for r, c in self._cells:
            m |= 1 << (r * n + c)
        return m

    def to_rows(self, empty=None) -> list[list]:
        grid = [[empty] * self.n for _ in range(self.n)]
        for (r, c), s in self._cells.items():
            grid[r][c] = s
        return grid


class LatinSquare(PLS):
    """A PLS with no empty cells."""

    __slots__ = ()

    def __init__(self, n: int, triples: Iterable = (), *, check: bool = True):
        super().__init__(n, triples, check=check)
        if check and not self.is_full():
            raise InvalidPLS(f"Latin square of order {n} needs {n * n} entries, got {len(self)}")

    @classmethod
    def from_pls(cls, P: PLS) -> "LatinSquare":
        if isinstance(P, LatinSquare):
            return P
        if not P.is_full():
            raise InvalidPLS("PLS has empty cells")
        obj = cls.__new__(cls)
        obj.n = P.n
        obj._cells = dict(P._cells)
        obj._hash = None
        return obj


def as_latin(P: PLS) -> LatinSquare:
    return LatinSquare.from_pls(P)


@lru_cache(maxsize=64)
def back_circulant(n: int) -> LatinSquare:
    """The addition table of Z_n, ``B_n = {(i, j; i+j mod n)}``."""
    if n < 1:
        raise InvalidPLS(f"order must be >= 1, got {n}")
    return LatinSquare(n, [(i, j, (i + j) % n) for i in range(n) for j in range(n)],
                       check=False)


def is_back_circulant(L: PLS) -> bool:
    return L.is_full() and L == back_circulant(L.n)


def shift(S: PLS, a: int, b: int, *, check: bool = True) -> PLS:
    """Translate ``S`` by ``(a, b)``.

    With ``check`` the input must lie inside ``B_n``; pass ``check=False``
    to translate arbitrary PLSs, e.g. the mate of a trade.
    """
    n = S.n
    if check and not S.issubset(back_circulant(n)):
        raise ContainmentViolated("shift requires S to be a subset of B_n")
    cells = {((r + a) % n, (c + b) % n): (s + a + b) % n
             for (r, c), s in S._cells.items()}
    return PLS._trusted(n, cells)


def transpose(S: PLS) -> PLS:
    return PLS._trusted(S.n, {(c, r): s for (r, c), s in S._cells.items()})


def negate(S: PLS) -> PLS:
    """``(i, j; k) -> (-i, -j; -k)``, an automorphism of ``B_n``."""
    n = S.n
    return PLS._trusted(n, {((-r) % n, (-c) % n): (-s) % n
                            for (r, c), s in S._cells.items()})


def diagonal(n: int, i: int) -> PLS:
    """Broken diagonal ``D_i = {(r, r+i; 2r+i)}`` of ``B_n``."""
    if not 0 <= i < n:
        raise IndexRange(f"diagonal index {i} outside 0..{n - 1}")
    return PLS._trusted(n, {(r, (r + i) % n): (2 * r + i) % n for r in range(n)})


def diagonal_index(n: int, cell) -> int:
    r, c = cell[0], cell[1]
    return (c - r) % n
