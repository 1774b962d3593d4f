"""Turn a tiling of the corner triangle E_11 into a Latin trade of B_11.

Every tile corner (x, y) becomes the cell in row x, column y, holding x+y
in B_11; the partner square swaps that symbol for x+y+k where k is the leg
of the tile whose right angle sits at (x, y).  Writes two SVG files next to
this script.
"""
from pathlib import Path

from kstrong.render import tessellation_svg, trade_svg
from kstrong.tessellation import e11_tessellation, tessellation_to_trade, validate_tessellation

here = Path(__file__).parent
S = e11_tessellation()
print(f"{len(S)} triangles, valid: {bool(validate_tessellation(S))}")
t = tessellation_to_trade(S)
for r, c, s in t.T.triples:
    print(f"  cell ({r},{c}): {s} -> {t.T_mate[r, c]}")
(here / "e11_tiles.svg").write_text(tessellation_svg(S, title="tiling of E_11"))
(here / "e11_trade.svg").write_text(trade_svg(t, title="the matching trade in B_11"))
print("wrote e11_tiles.svg and e11_trade.svg")
