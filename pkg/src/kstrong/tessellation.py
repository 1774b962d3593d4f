"""Good triangle tessellations and their compilation into trades of ``B_n``.

A good triangle has integer vertices, a right angle at ``(x, y)`` and legs
of signed length ``k`` along both axes, so its other corners are
``(x+k, y)`` and ``(x, y+k)`` and its hypotenuse has gradient -1.  Every
edge of such a triangle is normal to one of ``(1,0)``, ``(0,1)`` or
``(1,1)``, which makes exact overlap tests a three-axis interval check.

Plane points map to cells by ``(x, y) -> (row x, col y)``.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Union

from .errors import NotGood, ParameterRange, RightAngleCoverageViolated
from .pls import PLS, Check, shift
from .trades import Bitrade


class GoodTriangle(NamedTuple):
    x: int
    y: int
    k: int

    @property
    def right_vertex(self) -> tuple[int, int]:
        return (self.x, self.y)

    @property
    def vertices(self) -> tuple[tuple[int, int], tuple[int, int], tuple[int, int]]:
        x, y, k = self
        return ((x, y), (x + k, y), (x, y + k))

    def area2(self) -> int:
        return self.k * self.k

    def projections(self):
        """Closed projection intervals on the x, y and x+y axes."""
        x, y, k = self
        xs = sorted((x, x + k))
        ys = sorted((y, y + k))
        ss = sorted((x + y, x + y + k))
        return xs, ys, ss

    @classmethod
    def from_vertices(cls, pts) -> "GoodTriangle":
        """Recover the triangle from its three corners in any order."""
        pts = [tuple(p) for p in pts]
        if len(set(pts)) != 3:
            raise ValueError(f"not a triangle: {pts}")
        for p in pts:
            others = [q for q in pts if q != p]
            a, b = others
            if a[1] == p[1] and b[0] == p[0]:
                a, b = b, a
            if a[0] == p[0] and b[1] == p[1]:
                k = a[1] - p[1]
                if k != 0 and b[0] - p[0] == k:
                    return cls(p[0], p[1], k)
        raise ValueError(f"{pts} is not a good triangle")


@dataclass(frozen=True)
class En:
    """The triangle with corners (0,0), (n,0), (0,n)."""

    n: int

    def area2(self) -> int:
        return self.n * self.n

    def contains(self, p) -> bool:
        x, y = p
        return x >= 0 and y >= 0 and x + y <= self.n

    def as_triangle(self) -> GoodTriangle:
        return GoodTriangle(0, 0, self.n)


@dataclass(frozen=True)
class Rect:
    """The rectangle ``x0 <= x <= x0+h``, ``y0 <= y <= y0+w``.

    ``h`` runs along rows and ``w`` along columns once compiled to cells.
    """

    x0: int
    y0: int
    h: int
    w: int

    def area2(self) -> int:
        return 2 * self.h * self.w

    def contains(self, p) -> bool:
        x, y = p
        return self.x0 <= x <= self.x0 + self.h and self.y0 <= y <= self.y0 + self.w


Region = Union[En, Rect]


@dataclass(frozen=True)
class Tessellation:
    region: Region
    triangles: tuple[GoodTriangle, ...]

    def __post_init__(self):
        object.__setattr__(self, "triangles", tuple(GoodTriangle(*t) for t in self.triangles))

    def __len__(self) -> int:
        return len(self.triangles)

    def vertex_counts(self) -> Counter:
        c: Counter = Counter()
        for t in self.triangles:
            c.update(t.vertices)
        return c

    def vertices(self) -> set:
        return set(self.vertex_counts())


def _overlap(a: GoodTriangle, b: GoodTriangle) -> bool:
    for (lo1, hi1), (lo2, hi2) in zip(a.projections(), b.projections()):
        if min(hi1, hi2) <= max(lo1, lo2):
            return False
    return True


def validate_tessellation(S: Tessellation) -> Check:
    """Exact tiling and goodness check; the reason names the first failure."""
    region = S.region
    if not S.triangles:
        return Check(False, "no triangles")
    for t in S.triangles:
        if t.k == 0:
            return Check(False, f"degenerate triangle {tuple(t)}")
        for p in t.vertices:
            if not region.contains(p):
                return Check(False, f"triangle {tuple(t)} leaves the region")
    total = sum(t.area2() for t in S.triangles)
    if total != region.area2():
        return Check(False, f"area mismatch: {total} != {region.area2()} (doubled)")
    # sweep on x-intervals so only candidates with overlapping rows are compared
    order = sorted(S.triangles, key=lambda t: min(t.x, t.x + t.k))
    active: list[GoodTriangle] = []
    for t in order:
        lo = min(t.x, t.x + t.k)
        active = [a for a in active if max(a.x, a.x + a.k) > lo]
        for a in active:
            if _overlap(a, t):
                return Check(False, f"triangles {tuple(a)} and {tuple(t)} overlap")
        active.append(t)
    for p, c in sorted(S.vertex_counts().items()):
        if c > 3:
            return Check(False, f"point {p} is a corner of {c} triangles")
    return Check(True)


def tessellation_to_trade(S: Tessellation) -> Bitrade:
    """Compile a good tessellation of ``E_n`` into a trade of ``B_n``.

    Every corner point except ``(0,n)`` and ``(n,0)`` becomes the cell
    ``(x, y)`` holding ``x+y``; the mate puts ``x+y+k`` at the right-angle
    vertex of the triangle with leg ``k``.
    """
    if not isinstance(S.region, En):
        raise NotGood("trades are compiled from tessellations of E_n")
    n = S.region.n
    if len(S.triangles) < 2:
        raise NotGood("a tessellation by a single triangle yields no trade")
    chk = validate_tessellation(S)
    if not chk:
        raise NotGood(chk.reason)
    points = S.vertices() - {(0, n), (n, 0)}
    right: dict = {}
    for t in S.triangles:
        p = t.right_vertex
        if p in right:
            raise RightAngleCoverageViolated(f"{p} is the right angle of two triangles")
        right[p] = t.k
    missing = sorted(points - set(right))
    if missing:
        raise RightAngleCoverageViolated(f"{missing[0]} is not the right angle of any triangle")
    T = {}
    M = {}
    for (x, y) in points:
        T[(x % n, y % n)] = (x + y) % n
        M[(x % n, y % n)] = (x + y + right[(x, y)]) % n
    return Bitrade(PLS(n, [(r, c, s) for (r, c), s in T.items()]),
                   PLS(n, [(r, c, s) for (r, c), s in M.items()]))


# -- building blocks ----------------------------------------------------------

def square_triangles(x0: int, y0: int, s: int) -> list[GoodTriangle]:
    """Split the square ``[x0,x0+s] x [y0,y0+s]`` along its gradient -1 diagonal."""
    return [GoodTriangle(x0, y0, s), GoodTriangle(x0 + s, y0 + s, -s)]


def rectangle_squares(x0: int, y0: int, h: int, w: int) -> list[tuple[int, int, int]]:
    """Greedy maximal squares (Euclid style), each cut from the far end."""
    out = []
    x1, y1 = x0 + h, y0 + w
    while x1 > x0 and y1 > y0:
        hh, ww = x1 - x0, y1 - y0
        if hh >= ww:
            while x1 - x0 >= ww:
                out.append((x1 - ww, y0, ww))
                x1 -= ww
        else:
            while y1 - y0 >= hh:
                out.append((x0, y1 - hh, hh))
                y1 -= hh
    return out


def rectangle_triangles(x0: int, y0: int, h: int, w: int) -> list[GoodTriangle]:
    return [t for sq in rectangle_squares(x0, y0, h, w) for t in square_triangles(*sq)]


def tessellate_rectangle(w: int, h: int, origin=(0, 0)) -> Tessellation:
    """Good tessellation of a ``h`` (rows) by ``w`` (columns) rectangle."""
    if w < 1 or h < 1:
        raise ParameterRange(f"rectangle sides must be positive, got w={w}, h={h}")
    x0, y0 = origin
    return Tessellation(Rect(x0, y0, h, w), tuple(rectangle_triangles(x0, y0, h, w)))


def doubletool_tessellation(m: int, n: int) -> Tessellation:
    if not 2 <= 2 * m < n < 3 * m:
        raise ParameterRange(f"doubletool needs 2 <= 2m < n < 3m, got m={m}, n={n}")
    a = 3 * m - n
    tri = [
        GoodTriangle(0, 0, m),
        GoodTriangle(m, m, -m),
        GoodTriangle(m, 0, n - m),
        GoodTriangle(0, n - m, m),
        GoodTriangle(a, m, n - 2 * m),
        GoodTriangle(m, n - m, -(n - 2 * m)),
    ]
    tri += rectangle_triangles(0, m, a, n - 2 * m)
    return Tessellation(En(n), tuple(tri))


def doubletool(m: int, n: int) -> Bitrade:
    """Trade containing (0,0;0), (m,0;m), (m,m;2m), (m,n-m;0) for ``2 <= 2m < n < 3m``.

    Its remaining cells lie in rows ``0..3m-n`` and columns ``m..n-m``.
    """
    return tessellation_to_trade(doubletool_tessellation(m, n))


def tripletool_tessellation(m: int, n: int) -> Tessellation:
    if not n > 3 * m >= 3:
        raise ParameterRange(f"tripletool needs n > 3m >= 3, got m={m}, n={n}")
    tri = [
        GoodTriangle(0, 0, m),
        GoodTriangle(m, m, -m),
        GoodTriangle(0, m, m),
        GoodTriangle(m, 2 * m, -m),
        GoodTriangle(0, n - m, m),
        GoodTriangle(m, 0, n - m),
    ]
    tri += rectangle_triangles(0, 2 * m, m, n - 3 * m)
    return Tessellation(En(n), tuple(tri))


def tripletool(m: int, n: int) -> Bitrade:
    """Trade containing (0,0;0), (m,0;m), (m,m;2m), (0,m;m) for ``n > 3m >= 3``.

    Its remaining cells lie in rows ``0..m`` and columns ``2m..n-m``.
    """
    return tessellation_to_trade(tripletool_tessellation(m, n))


# The 12-piece tessellation of E_11 behind the smallest doubletool example.
E11_TRIANGLES = (
    ((0, 0), (0, 4), (4, 0)), ((4, 4), (0, 4), (4, 0)),
    ((0, 4), (1, 4), (0, 5)), ((1, 5), (0, 5), (1, 4)),
    ((0, 5), (1, 5), (0, 6)), ((1, 6), (0, 6), (1, 5)),
    ((0, 6), (1, 6), (0, 7)), ((1, 7), (0, 7), (1, 6)),
    ((1, 4), (4, 4), (1, 7)), ((4, 7), (4, 4), (1, 7)),
    ((0, 7), (0, 11), (4, 7)), ((4, 0), (4, 7), (11, 0)),
)

# As typeset, three of the unit-square halves read {(0,c),(1,c),(1,c+1)},
# which is not a good triangle (its long side has gradient +1).
E11_TRIANGLES_AS_PRINTED = (
    ((0, 0), (0, 4), (4, 0)), ((4, 4), (0, 4), (4, 0)),
    ((0, 4), (1, 4), (0, 5)), ((0, 4), (1, 4), (1, 5)),
    ((0, 5), (1, 5), (0, 6)), ((0, 5), (1, 5), (1, 6)),
    ((0, 6), (1, 6), (0, 7)), ((0, 6), (1, 6), (1, 7)),
    ((1, 4), (4, 4), (1, 7)), ((4, 7), (4, 4), (1, 7)),
    ((0, 7), (0, 11), (4, 7)), ((4, 0), (4, 7), (11, 0)),
)


def e11_tessellation() -> Tessellation:
    return Tessellation(En(11), tuple(GoodTriangle.from_vertices(t) for t in E11_TRIANGLES))


# -- sparse trades ------------------------------------------------------------

def m_sequence(n: int, x: int) -> list[int]:
    """``m_0 = (n-3)/2``, ``m_i = floor((m_{i-1}-3)/4)``, stopping at the first ``m <= n/x + 6``."""
    limit = Fraction(n, x) + 6
    seq = [(n - 3) // 2]
    while seq[-1] > limit:
        seq.append((seq[-1] - 3) // 4)
    return seq


def _panel(m: int):
    """Squares (u, v, side) and the hole of an ``m`` by ``m+3`` panel.

    ``v`` runs along the short side (height ``m``), ``u`` along the long
    side (width ``m+3``).  The hole is ``2k`` high and ``2k+6`` wide with
    ``k = (m-3)//4``, i.e. the next panel magnified by two.
    """
    k, r = divmod(m - 3, 4)
    if k < 0:
        raise ParameterRange(f"panel height must be >= 3, got {m}")
    if r == 0:
        sq = [(0, 0, 2 * k), (0, 2 * k, 2 * k + 3), (2 * k + 3, 2 * k, 2 * k + 3)]
        hole = 2 * k
    elif r == 1:
        sq = [(0, 0, 2 * k + 1), (0, 2 * k + 1, 2 * k + 3), (2 * k + 3, 2 * k, 2 * k + 4),
              (2 * k + 1, 2 * k, 1), (2 * k + 2, 2 * k, 1)]
        hole = 2 * k + 1
    elif r == 2:
        sq = [(0, 0, 2 * k + 2), (0, 2 * k + 2, 2 * k + 3), (2 * k + 3, 2 * k, 2 * k + 5),
              (2 * k + 2, 2 * k, 1), (2 * k + 2, 2 * k + 1, 1)]
        hole = 2 * k + 2
    else:
        sq = [(0, 0, 2 * k + 3), (0, 2 * k + 3, 2 * k + 3), (2 * k + 3, 2 * k, 2 * k + 6)]
        hole = 2 * k + 3
    return [s for s in sq if s[2] > 0], (hole, 0, 2 * k + 6, 2 * k)


def _place(squares, hole, scale, x0, y0, height, width, flip_u, flip_v):
    """Map panel squares into the plane rectangle at ``(x0, y0)``; return squares and hole rect."""
    def box(u, v, du, dv):
        u, v, du, dv = u * scale, v * scale, du * scale, dv * scale
        if flip_u:
            u = width - u - du
        if flip_v:
            v = height - v - dv
        return x0 + v, y0 + u, dv, du
    placed = []
    for u, v, s in squares:
        x, y, _, _ = box(u, v, s, s)
        placed.append((x, y, s * scale))
    hx, hy, hh, hw = box(*hole)
    return placed, Rect(hx, hy, hh, hw)


def sparse_tessellations(n: int, x: int):
    """Yield candidate tessellations of ``E_n`` following the recursive panel scheme.

    Each recursion level may place its panel in any of the four
    axis-reflected orientations; candidates come in a fixed order.
    """
    if n % 2 == 0:
        raise ParameterRange(f"sparse trades need odd n, got {n}")
    seq = m_sequence(n, x)
    m0 = seq[0]
    outer = [GoodTriangle(0, m0 + 3, m0), GoodTriangle(m0, 0, m0 + 3)]
    levels = len(seq) - 1
    for orient in itertools.product(range(4), repeat=levels):
        tri = list(outer)
        rect = Rect(0, 0, m0, m0 + 3)
        scale = 1
        for i in range(levels):
            squares, hole = _panel(seq[i])
            fu, fv = orient[i] & 1, orient[i] >> 1
            placed, rect = _place(squares, hole, scale, rect.x0, rect.y0, rect.h, rect.w, fu, fv)
            for sq in placed:
                tri += square_triangles(*sq)
            scale *= 2
        tri += rectangle_triangles(rect.x0, rect.y0, rect.h, rect.w)
        yield Tessellation(En(n), tuple(tri)), rect


def qnk_level(n: int, x: int) -> int:
    return n - math.ceil(Fraction(4 * n, x)) - 30


def sparse_bound(x: int) -> float:
    return 10 * math.log(2 * x, 4)


def sparse_trade(n: int, x: int) -> tuple[Bitrade, int]:
    """A trade of ``B_n`` meeting ``D_0 u ... u D_K`` rarely, ``K = n - ceil(4n/x) - 30``.

    The trade comes from the recursive tessellation, translated by the
    ``(0, d)`` that minimises its intersection with that diagonal band.
    Returns the trade and the exact intersection count.
    """
    if not 1 <= x <= n or Fraction(n) - Fraction(4 * n, x) < 30:
        raise ParameterRange(f"need x <= n and n - 4n/x >= 30, got n={n}, x={x}")
    if n % 2 == 0:
        raise ParameterRange(f"sparse trades are built for odd n only, got {n}")
    K = qnk_level(n, x)
    last_error = None
    for tess, _ in sparse_tessellations(n, x):
        try:
            trade = tessellation_to_trade(tess)
        except (NotGood, RightAngleCoverageViolated) as exc:
            last_error = exc
            continue
        hist = Counter((c - r) % n for r, c in trade.cells)
        best_d, best = 0, None
        for d in range(n):
            cnt = sum(v for diag, v in hist.items() if (diag + d) % n <= K)
            if best is None or cnt < best:
                best_d, best = d, cnt
        moved = Bitrade(shift(trade.T, 0, best_d), shift(trade.T_mate, 0, best_d, check=False))
        return moved, best
    raise NotGood(f"no orientation of the panels gave a good tessellation: {last_error}")


def diagonal_band_hits(T: PLS, K: int) -> int:
    """Number of cells of ``T`` on diagonals ``0..K``."""
    n = T.n
    return sum(1 for r, c in T.cells if (c - r) % n <= K)


def triangles_from_vertex_lists(lists: Iterable) -> tuple[GoodTriangle, ...]:
    return tuple(GoodTriangle.from_vertices(v) for v in lists)
