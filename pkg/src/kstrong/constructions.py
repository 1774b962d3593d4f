"""Named subsets of ``B_n`` and the trades that certify their strength.

``P_n`` (diagonals ``0..ceil((n-3)/2)``) is minimally 2-strong, ``Q_n``
(a clipped band inside it) is a critical set, and for even ``n`` the
square splits into four disjoint critical sets ``C_1..C_4``.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import IndexRange, NotInP, NotInQ, OddOrder, OrderTooSmall
from .pls import PLS, Triple, back_circulant, diagonal, negate, shift, transpose
from .tessellation import (En, GoodTriangle, Tessellation, doubletool,
                           rectangle_triangles, tessellation_to_trade, tripletool)
from .trades import Bitrade, trade_from_cells, trade_through


def _ceil_half(a: int) -> int:
    return -((-a) // 2)


def p_width(n: int) -> int:
    """Index of the last diagonal in ``P_n``."""
    return _ceil_half(n - 3)


def build_P(n: int) -> PLS:
    if n < 2:
        raise OrderTooSmall(f"P_n needs n >= 2, got {n}")
    return build_Qk(n, max(0, p_width(n)))


def build_Qk(n: int, k: int) -> PLS:
    """Union of the diagonals ``D_0, ..., D_k``."""
    if not 0 <= k < n:
        raise IndexRange(f"k must lie in 0..{n - 1}, got {k}")
    cells = {}
    for i in range(k + 1):
        cells.update(diagonal(n, i)._cells)
    return PLS._trusted(n, cells)


def q_width(n: int) -> int:
    return _ceil_half(n - 3)


def build_Q(n: int) -> PLS:
    """Cells ``1 <= i <= j <= i + ceil((n-3)/2)`` of ``B_n`` (columns clipped at ``n-1``)."""
    if n < 3:
        raise OrderTooSmall(f"Q_n needs n >= 3, got {n}")
    N = q_width(n)
    return PLS._trusted(n, {(i, j): (i + j) % n for i in range(1, n)
                            for j in range(i, min(i + N, n - 1) + 1)})


def qn_completion_sequence(n: int) -> list[tuple[int, int]]:
    """Order in which the empty cells of ``Q_n`` are each forced to their ``B_n`` symbol."""
    if n < 3:
        raise OrderTooSmall(f"Q_n needs n >= 3, got {n}")
    N = q_width(n)
    seq = []
    for d in range(N + 1, n - 1):
        seq += [(r, r + d) for r in range(1, n - d)]
    for c in range(n - 1, -1, -1):
        seq += [(r, c) for r in range(c + 1, n)]
        seq.append((0, c))
    return seq


def build_C_partition(n: int) -> tuple[PLS, PLS, PLS, PLS]:
    """Four disjoint critical sets of ``B_n`` (``n`` even), each of size ``n^2/4``."""
    if n % 2 or n < 2:
        raise OddOrder(f"the partition needs even n >= 2, got {n}")
    h = n // 2
    cells = {}
    for i in range(h):
        for j in range(h - i):
            cells[(i, j)] = i + j
    for i in range(1, h):
        for j in range(h - i, h):
            cells[(i + h, j + h)] = (i + j) % n
    C1 = PLS._trusted(n, {c: s % n for c, s in cells.items()})
    return (C1, shift(C1, 0, h), shift(C1, h, 0), shift(C1, h, h))


def c_union(n: int, k: int) -> PLS:
    """``C_1 u ... u C_k``."""
    parts = build_C_partition(n)
    out = PLS._trusted(n, {})
    for C in parts[:k]:
        out = PLS._trusted(n, {**out._cells, **C._cells})
    return out


# -- witness trades -----------------------------------------------------------

def _shift_trade(t: Bitrade, a: int, b: int) -> Bitrade:
    return Bitrade(shift(t.T, a, b, check=False), shift(t.T_mate, a, b, check=False))


def _flip_trade(t: Bitrade, n: int) -> Bitrade:
    """Transpose then translate by ``((n+3)/2, 0)``; maps ``P_n`` onto itself for odd ``n``."""
    a = (n + 3) // 2
    return Bitrade(shift(transpose(t.T), a, 0, check=False),
                   shift(transpose(t.T_mate), a, 0, check=False))


def _flip_inverse(t: Bitrade, n: int) -> Bitrade:
    a = (n + 3) // 2
    return Bitrade(transpose(shift(t.T, -a, 0, check=False)),
                   transpose(shift(t.T_mate, -a, 0, check=False)))


def _odd_row0_witness(n: int, j: int) -> Bitrade:
    """Trade through (0,j;j) meeting ``P_n`` twice, for ``ceil((n-3)/4) <= j <= (n-3)/2``."""
    third = Fraction(n - 3, 3)
    if j < third:
        return _shift_trade(tripletool(j + 1, n), 0, j)
    if j == third:
        cells = [(0, j), (0, 2 * j + 1), (j + 1, j), (j + 1, 2 * j + 1),
                 (0, 3 * j + 2), (j + 1, 3 * j + 2)]
        return trade_from_cells(n, cells)
    return _shift_trade(doubletool(j + 1, n), 0, j)


def witness_P(n: int, e) -> Bitrade:
    """A trade of ``B_n`` through ``e`` meeting ``P_n`` in exactly two entries."""
    e = Triple(*e)
    P = build_P(n)
    if e not in P:
        raise NotInP(f"{tuple(e)} is not in P_{n}")
    i, j0 = e.row, (e.col - e.row) % n
    if n % 2 == 0:
        h = n // 2
        base = trade_from_cells(n, [(0, j0), (0, j0 + h), (h, j0), (h, (j0 + h) % n)])
        return _shift_trade(base, i, i)
    lo = -((-(n - 3)) // 4)
    if j0 < lo:
        # the flip sends (0, j0) to (a+j0, 0), which lies on diagonal (n-3)/2 - j0
        a = (n + 3) // 2
        t = _odd_row0_witness(n, (n - 3) // 2 - j0)
        t = _flip_inverse(_shift_trade(t, a + j0, a + j0), n)
    else:
        t = _odd_row0_witness(n, j0)
    return _shift_trade(t, i, i)


def _reflect(t: Bitrade) -> Bitrade:
    """``(i, j; k) -> (n-j, n-i; n-k)``, a symmetry of ``Q_n``."""
    return Bitrade(negate(transpose(t.T)), negate(transpose(t.T_mate)))


def _q_case1(n: int, i: int, j: int) -> Bitrade:
    s = j - i + 1
    tri = [
        GoodTriangle(0, 0, s),
        GoodTriangle(s, s, -s),
        GoodTriangle(0, s, n - s),
        GoodTriangle(n - s, 0, s),
    ]
    tri += rectangle_triangles(s, 0, n - 2 * s, s)
    t = tessellation_to_trade(Tessellation(En(n), tuple(tri)))
    return _shift_trade(t, i, i - 1)


def witness_Q_route(n: int, e) -> tuple[Bitrade, str]:
    """A trade meeting ``Q_n`` only in ``e``, and the route that produced it.

    Routes: ``"tessellation"`` (j < n/2 after reflecting to i + j <= n),
    ``"intercalate"`` (even n), ``"two-row"`` (odd n), or ``"oracle"``.
    The tessellation route wraps around when ``2i - j - 1`` lands back
    inside the band, and then meets ``Q_n`` more than once; those cells
    fall back to deleting ``e`` from ``Q_n``, forbidding its symbol, and
    reading the trade off the alternative completion.
    """
    e = Triple(*e)
    Q = build_Q(n)
    if e not in Q:
        raise NotInQ(f"{tuple(e)} is not in Q_{n}")
    t, route = _constructed_witness_Q(n, e)
    if t.T.intersection(Q).triples == (e,):
        return t, route
    t = trade_through(back_circulant(n), Q, 1, e)
    return t, "oracle"


def _constructed_witness_Q(n: int, e: Triple) -> tuple[Bitrade, str]:
    i, j = e.row, e.col
    if i + j > n:
        ri, rj = (n - j) % n, (n - i) % n
        t, route = _constructed_witness_Q(n, Triple(ri, rj, (ri + rj) % n))
        return _reflect(t), route
    if 2 * j < n:
        return _q_case1(n, i, j), "tessellation"
    if n % 2 == 0:
        h = n // 2
        return trade_from_cells(n, [(i, j), ((i + h) % n, j), (i, (j + h) % n),
                                    ((i + h) % n, (j + h) % n)]), "intercalate"
    N = (n - 1) // 2
    cells = {(i, j), (i, (j - N) % n)}
    for c in range(j - N, j + 1):
        cells.add(((i + N) % n, c % n))
        cells.add(((i + N + 1) % n, c % n))
    return trade_from_cells(n, sorted(cells)), "two-row"


def witness_Q(n: int, e) -> Bitrade:
    """A trade of ``B_n`` meeting ``Q_n`` only in ``e``."""
    return witness_Q_route(n, e)[0]


TWO_STRONG_B5_ROWS = (
    "0 1 . . .",
    "1 . . 4 .",
    ". 3 . . .",
    ". . 0 . 2",
    ". . . 2 3",
)


def two_strong_b5() -> PLS:
    """A 2-strong defining set of ``B_5`` with 9 entries."""
    rows = [[None if tok == "." else int(tok) for tok in line.split()] for line in TWO_STRONG_B5_ROWS]
    return PLS.from_rows(rows)
