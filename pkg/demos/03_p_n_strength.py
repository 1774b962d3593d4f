"""P_n, the first ceil((n-3)/2)+1 broken diagonals of B_n, is minimally 2-strong.

For every entry of P_n there is a trade meeting P_n in exactly two places,
so no entry can be dropped.  This script checks the property directly and
through the explicit witness trades, for a handful of orders.
"""
import time

from kstrong.constructions import build_P, witness_P
from kstrong.pls import back_circulant
from kstrong.strength import verify_k_strong, verify_minimal_k_strong

for n in (5, 7, 9, 11):
    start = time.perf_counter()
    B, P = back_circulant(n), build_P(n)
    strong = verify_k_strong(P, B, 2).verdict
    minimal = verify_minimal_k_strong(P, B, 2)
    hits = {len(witness_P(n, e).T.intersection(P)) for e in P.triples}
    print(f"n={n:2d} |P_n|={len(P):3d} 2-strong={strong} minimal={minimal} "
          f"witness hits={sorted(hits)}  {time.perf_counter() - start:.2f}s")
