"""One test group per acceptance criterion; a PASS/FAIL line per criterion is
printed in the terminal summary."""
import random

import pytest

from kstrong.cli import load_table1
from kstrong.completion import is_defining_set, replay_forced
from kstrong.constructions import (build_P, build_Q, c_union, two_strong_b5, qn_completion_sequence,
                                   witness_P, witness_Q)
from kstrong.pls import PLS, back_circulant, shift
from kstrong.strength import (certificate_is_coherent, extract_chain, intercalate_lower_bound,
                              search_min_k_strong, verify_k_strong, verify_minimal_k_strong)
from kstrong.tessellation import (doubletool, e11_tessellation, sparse_bound, sparse_trade,
                                  tessellation_to_trade, tripletool)
from kstrong.trades import enumerate_trades, trade_index, validate_bitrade

from test_trades import E11_TRADE

TABLE1 = "sds(B_n,k) search reproduces the published values for n = 2..5"


@pytest.mark.criterion(1, TABLE1)
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_c1_table1(n):
    expected = load_table1()[n]
    assert expected == {2: [1, 2, 3, 4], 3: [2, 3, 5, 6, 8, 9], 4: [4, 8, 12, 16],
                        5: [6, 9, 12, 15, 19, 20, 24, 25]}[n]
    B = back_circulant(n)
    got = []
    for k in range(1, len(expected) + 1):
        cert = search_min_k_strong(B, k)
        assert cert.exact and certificate_is_coherent(cert)
        got.append(cert.optimum)
    assert got == expected


@pytest.mark.criterion(2, "sds(B_6,k) = 9k for k = 1..4 with C-union witnesses")
@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_c2_order6(k):
    B = back_circulant(6)
    U = c_union(6, k)
    assert verify_k_strong(U, B, k).verdict
    lb = intercalate_lower_bound(6, k)
    cert = search_min_k_strong(B, k, incumbent=U)
    assert cert.exact and certificate_is_coherent(cert)
    assert cert.optimum == lb.bound == len(U) == 9 * k


@pytest.mark.criterion(3, "the 9-entry fixture is 2-strong, not 3-strong, and of minimum size")
def test_c3_two_strong_b5():
    B = back_circulant(5)
    F = two_strong_b5()
    assert verify_k_strong(F, B, 2).verdict
    assert not verify_k_strong(F, B, 3).verdict
    assert len(F) == search_min_k_strong(B, 2).optimum == 9


@pytest.mark.criterion(4, "P_n is minimally 2-strong for n in {3,...,9,11} with valid witnesses")
@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 9, 11])
def test_c4_p_minimal(n):
    B = back_circulant(n)
    P = build_P(n)
    assert verify_k_strong(P, B, 2).verdict
    assert verify_minimal_k_strong(P, B, 2)
    for e in P.triples:
        t = witness_P(n, e)
        assert validate_bitrade(t.T, t.T_mate) and e in t.T
        assert len(t.T.intersection(P)) == 2


@pytest.mark.criterion(5, "Q_n forced completion for 3 <= n <= 50; witness_Q meets Q_n once for n <= 11")
def test_c5_q():
    for n in range(3, 51):
        res = replay_forced(build_Q(n), qn_completion_sequence(n))
        assert res.ok and res.square == back_circulant(n)
    for n in range(3, 12):
        Q = build_Q(n)
        for e in Q.triples:
            t = witness_Q(n, e)
            assert validate_bitrade(t.T, t.T_mate)
            assert t.T.intersection(Q).triples == (e,)


@pytest.mark.criterion(6, "E_11 tessellation compiles to the drawn 12-cell trade")
def test_c6_e11():
    t = tessellation_to_trade(e11_tessellation())
    assert {(r, c): (t.T[r, c], t.T_mate[r, c]) for r, c in t.cells} == E11_TRADE
    assert t.T[0, 0] == 0 and t.T_mate[0, 0] == 4


def _all_constructed_trades():
    for n in range(3, 14):
        for e in build_P(n).triples:
            yield witness_P(n, e)
        for e in build_Q(n).triples:
            yield witness_Q(n, e)
    for n in range(3, 30):
        for m in range(1, n):
            if 2 <= 2 * m < n < 3 * m:
                yield doubletool(m, n)
            if n > 3 * m >= 3:
                yield tripletool(m, n)
    yield tessellation_to_trade(e11_tessellation())
    yield from enumerate_trades(back_circulant(4))
    yield from search_min_k_strong(back_circulant(5), 2).trade_pool


@pytest.mark.criterion(7, "property suites: trades valid, shift equivariance, oracle agreement, sparse trades")
def test_c7a_constructed_trades_validate():
    count = 0
    for t in _all_constructed_trades():
        assert validate_bitrade(t.T, t.T_mate)
        count += 1
    assert count > 1000


@pytest.mark.criterion(7, "property suites: trades valid, shift equivariance, oracle agreement, sparse trades")
def test_c7b_shift_equivariance():
    rng = random.Random(2024)
    B5, B7 = back_circulant(5), back_circulant(7)
    F = two_strong_b5()
    instances = [
        (F, B5, [2, 3]), (build_P(5), B5, [2]), (build_Q(7), B7, [1, 2]),
        (PLS(5, [t for t in B5.triples if rng.random() < 0.5]), B5, [1]),
    ]
    for D, L, ks in instances:
        n = L.n
        want_def = is_defining_set(D, L)
        want = {k: verify_k_strong(D, L, k).verdict for k in ks}
        for _ in range(100):
            a, b = rng.randrange(n), rng.randrange(n)
            E = shift(D, a, b)
            assert is_defining_set(E, L) == want_def
            for k in ks:
                assert verify_k_strong(E, L, k).verdict == want[k]


@pytest.mark.criterion(7, "property suites: trades valid, shift equivariance, oracle agreement, sparse trades")
@pytest.mark.parametrize("n", [2, 3, 4])
def test_c7c_oracle_equivalence(n):
    rng = random.Random(n)
    B = back_circulant(n)
    idx = trade_index(B)
    subsets = [PLS(n, [t for t in B.triples if rng.random() < p]) for p in (0.3, 0.5, 0.7, 0.9)
               for _ in range(40)] + [B]
    for D in subsets:
        hits = idx.hits(D)
        for k in range(1, 5):
            assert verify_k_strong(D, B, k, "subsets").verdict == bool((hits >= k).all())


@pytest.mark.criterion(7, "property suites: trades valid, shift equivariance, oracle agreement, sparse trades")
@pytest.mark.parametrize("n,x", [(151, 10), (201, 20), (199, 50), (201, 201), (131, 30)])
def test_c7d_sparse_trades(n, x):
    t, count = sparse_trade(n, x)
    assert validate_bitrade(t.T, t.T_mate)
    assert count <= sparse_bound(x)


@pytest.mark.criterion(8, "chains for B_4 and B_5 are strictly nested and minimally t-strong")
@pytest.mark.parametrize("n", [4, 5])
def test_c8_chains(n):
    ch = extract_chain(back_circulant(n))
    assert len(ch.sets) == {4: 4, 5: 8}[n]
    for a, b in zip(ch.sets, ch.sets[1:]):
        assert a < b
    for t, D in enumerate(ch.sets, start=1):
        assert verify_minimal_k_strong(D, ch.L, t)
