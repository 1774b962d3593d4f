"""Static SVG drawings of partial Latin squares, trades and tessellations.

Output is built from sorted inputs with fixed number formatting, so the
same object always renders to the same bytes.
"""
from __future__ import annotations

from typing import Optional
from xml.sax.saxutils import escape

from .pls import PLS, back_circulant
from .tessellation import En, Tessellation
from .trades import Bitrade

CELL = 32
PAD = 8
SHADE = "#d9d9d9"
TRADE = "#9ecae1"


def _header(width: int, height: int) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]


def square_svg(P: PLS, *, full: Optional[PLS] = None, marked: Optional[PLS] = None,
               trade: Optional[Bitrade] = None, title: str = "") -> str:
    """Grid of order ``n`` showing the symbols of ``full`` (or ``P``).

    Cells of ``marked`` (default ``P`` when ``full`` is given) are shaded;
    cells of ``trade`` get a second colour, bold text and the mate symbol
    as a subscript.
    """
    n = P.n
    base = full if full is not None else P
    if marked is None and full is not None:
        marked = P
    size = n * CELL + 2 * PAD
    top = PAD + (20 if title else 0)
    out = _header(size, size + top - PAD)
    if title:
        out.append(f'<text x="{PAD}" y="{PAD + 12}" font-family="sans-serif" '
                   f'font-size="13">{escape(title)}</text>')
    mark_cells = set(marked.cells) if marked is not None else set()
    trade_cells = set(trade.cells) if trade is not None else set()
    for r in range(n):
        for c in range(n):
            x, y = PAD + c * CELL, top + r * CELL
            fill = TRADE if (r, c) in trade_cells else SHADE if (r, c) in mark_cells else "none"
            out.append(f'<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" '
                       f'fill="{fill}" stroke="black" stroke-width="1"/>')
            sym = base.get((r, c))
            if sym is None:
                continue
            weight = ' font-weight="bold"' if (r, c) in trade_cells else ""
            out.append(f'<text x="{x + CELL // 2}" y="{y + CELL // 2 + 5}" text-anchor="middle" '
                       f'font-family="sans-serif" font-size="14"{weight}>{sym}</text>')
            if (r, c) in trade_cells:
                out.append(f'<text x="{x + CELL - 4}" y="{y + CELL - 3}" text-anchor="end" '
                           f'font-family="sans-serif" font-size="9">{trade.T_mate[r, c]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def trade_svg(t: Bitrade, title: str = "") -> str:
    # show the trade inside B_n when it fits there
    B = back_circulant(t.n)
    full = B if t.T.issubset(B) else t.T
    return square_svg(t.T, full=full, marked=PLS(t.n, []), trade=t, title=title)


def tessellation_svg(S: Tessellation, scale: int = 0, title: str = "") -> str:
    """Triangles drawn with x down and y across, like rows and columns."""
    pts = [p for t in S.triangles for p in t.vertices]
    if isinstance(S.region, En):
        pts += [(0, 0), (S.region.n, 0), (0, S.region.n)]
    xmin = min(p[0] for p in pts)
    ymin = min(p[1] for p in pts)
    xmax = max(p[0] for p in pts)
    ymax = max(p[1] for p in pts)
    span = max(xmax - xmin, ymax - ymin, 1)
    if scale <= 0:
        scale = max(2, 480 // span)
    width = (ymax - ymin) * scale + 2 * PAD
    height = (xmax - xmin) * scale + 2 * PAD + (20 if title else 0)
    top = PAD + (20 if title else 0)
    out = _header(width, height)
    if title:
        out.append(f'<text x="{PAD}" y="{PAD + 12}" font-family="sans-serif" '
                   f'font-size="13">{escape(title)}</text>')

    def xy(p):
        return f"{PAD + (p[1] - ymin) * scale},{top + (p[0] - xmin) * scale}"

    for t in sorted(S.triangles):
        poly = " ".join(xy(p) for p in t.vertices)
        out.append(f'<polygon points="{poly}" fill="{TRADE if t.k > 0 else SHADE}" '
                   f'stroke="black" stroke-width="1"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
