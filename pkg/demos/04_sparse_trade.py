"""Trades of large B_n that barely touch a wide band of diagonals.

sparse_trade nests shrinking panels inside one another, tiles the rest with
squares, and slides the resulting trade sideways to avoid the band
D_0..D_K with K = n - ceil(4n/x) - 30.  The count stays below 10*log4(2x)
even though the band covers most of the square.
"""
from kstrong.tessellation import qnk_level, sparse_bound, sparse_trade

for n, x in [(131, 30), (151, 10), (199, 50), (201, 20), (201, 201)]:
    t, count = sparse_trade(n, x)
    print(f"n={n} x={x:3d} band 0..{qnk_level(n, x)}: trade size {len(t):4d}, "
          f"meets band {count:2d} times (bound {sparse_bound(x):.1f})")
