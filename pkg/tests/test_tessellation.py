import pytest
from hypothesis import given, strategies as st

from kstrong.errors import NotGood, ParameterRange, RightAngleCoverageViolated
from kstrong.pls import back_circulant
from kstrong.tessellation import (E11_TRIANGLES, E11_TRIANGLES_AS_PRINTED, En, GoodTriangle, Rect,
                                  Tessellation, diagonal_band_hits, doubletool,
                                  doubletool_tessellation, e11_tessellation, m_sequence, qnk_level,
                                  rectangle_squares, sparse_bound, sparse_trade,
                                  tessellate_rectangle, tessellation_to_trade,
                                  triangles_from_vertex_lists, tripletool, tripletool_tessellation,
                                  validate_tessellation)
from kstrong.trades import validate_bitrade

from test_trades import E11_TRADE


def test_from_vertices_any_order():
    t = GoodTriangle(4, 7, -3)
    for perm in ([0, 1, 2], [2, 0, 1], [1, 2, 0], [2, 1, 0]):
        assert GoodTriangle.from_vertices([t.vertices[i] for i in perm]) == t


def test_from_vertices_rejects_wrong_gradient():
    with pytest.raises(ValueError):
        GoodTriangle.from_vertices([(0, 4), (1, 4), (1, 5)])


def test_printed_e11_list_is_not_good():
    with pytest.raises(ValueError):
        triangles_from_vertex_lists(E11_TRIANGLES_AS_PRINTED)
    # the two lists differ only in the three flipped unit-square halves
    diff = [a for a, b in zip(E11_TRIANGLES, E11_TRIANGLES_AS_PRINTED) if set(a) != set(b)]
    assert len(diff) == 3


def test_e11_valid_and_compiles_to_drawn_trade():
    S = e11_tessellation()
    assert len(S) == 12 and validate_tessellation(S)
    t = tessellation_to_trade(S)
    got = {(r, c): (t.T[r, c], t.T_mate[r, c]) for r, c in t.cells}
    assert got == E11_TRADE
    assert t.T.issubset(back_circulant(11))


def test_single_triangle_is_valid_but_gives_no_trade():
    S = Tessellation(En(2), (GoodTriangle(0, 0, 2),))
    assert validate_tessellation(S)
    with pytest.raises(NotGood):
        tessellation_to_trade(S)


def test_duplicate_triangle_overlaps():
    S = Tessellation(En(2), (GoodTriangle(0, 0, 1), GoodTriangle(0, 0, 1),
                             GoodTriangle(1, 0, 1), GoodTriangle(0, 1, 1)))
    chk = validate_tessellation(S)
    assert not chk and ("area" in chk.reason or "overlap" in chk.reason)


def test_overlap_detected_with_matching_area():
    # same area as E_2 but two halves of one square stacked on each other
    S = Tessellation(En(2), (GoodTriangle(0, 0, 1), GoodTriangle(0, 0, 1),
                             GoodTriangle(1, 1, -1), GoodTriangle(1, 0, 1)))
    chk = validate_tessellation(S)
    assert not chk and "overlap" in chk.reason


def test_leaving_region_and_degenerate():
    assert "leaves" in validate_tessellation(Tessellation(En(2), (GoodTriangle(1, 1, 1),))).reason
    assert "degenerate" in validate_tessellation(Tessellation(En(2), (GoodTriangle(0, 0, 0),))).reason


def test_four_unit_triangles_of_e2():
    S = Tessellation(En(2), (GoodTriangle(0, 0, 1), GoodTriangle(1, 1, -1),
                             GoodTriangle(1, 0, 1), GoodTriangle(0, 1, 1)))
    t = tessellation_to_trade(S)
    assert len(t) == 4 and t.T == back_circulant(2)


def test_every_corner_is_one_right_angle():
    for S in (e11_tessellation(), doubletool_tessellation(7, 17), tripletool_tessellation(3, 14)):
        n = S.region.n
        rights = [t.right_vertex for t in S.triangles]
        assert len(rights) == len(set(rights))
        assert set(rights) == S.vertices() - {(0, n), (n, 0)}


@pytest.mark.parametrize("h,w,count", [(1, 1, 2), (2, 3, 6), (4, 7, 10), (5, 5, 2)])
def test_rectangles(h, w, count):
    S = tessellate_rectangle(w, h)
    assert isinstance(S.region, Rect)
    assert len(S) == count and validate_tessellation(S)


@given(st.integers(1, 30), st.integers(1, 30), st.integers(-5, 5), st.integers(-5, 5))
def test_rectangle_always_tiles(h, w, x0, y0):
    S = tessellate_rectangle(w, h, (x0, y0))
    assert validate_tessellation(S)
    assert sum(s * s for *_, s in rectangle_squares(x0, y0, h, w)) == h * w


def test_rectangle_rejects_empty():
    with pytest.raises(ParameterRange):
        tessellate_rectangle(0, 3)


def test_doubletool_smallest():
    t = doubletool(4, 11)
    assert len(validate_tessellation(doubletool_tessellation(4, 11)).reason) == 0
    assert {(r, c): (t.T[r, c], t.T_mate[r, c]) for r, c in t.cells} == E11_TRADE


def _doubletool_cases(limit):
    return [(m, n) for n in range(3, limit + 1) for m in range(1, n) if 2 <= 2 * m < n < 3 * m]


def _tripletool_cases(limit):
    return [(m, n) for n in range(4, limit + 1) for m in range(1, n) if n > 3 * m >= 3]


@pytest.mark.parametrize("limit", [40])
def test_doubletool_postconditions(limit):
    for m, n in _doubletool_cases(limit):
        t = doubletool(m, n)
        assert validate_bitrade(t.T, t.T_mate)
        for e in [(0, 0, 0), (m, 0, m), (m, m, 2 * m % n), (m, n - m, 0)]:
            assert e in t.T
        rest = set(t.cells) - {(0, 0), (m, 0), (m, m), (m, n - m)}
        assert all(r <= 3 * m - n and m <= c <= n - m for r, c in rest), (m, n)


@pytest.mark.parametrize("limit", [40])
def test_tripletool_postconditions(limit):
    for m, n in _tripletool_cases(limit):
        t = tripletool(m, n)
        assert validate_bitrade(t.T, t.T_mate)
        for e in [(0, 0, 0), (m, 0, m), (m, m, 2 * m % n), (0, m, m)]:
            assert e in t.T
        rest = set(t.cells) - {(0, 0), (m, 0), (m, m), (0, m)}
        assert all(r <= m and 2 * m <= c <= n - m for r, c in rest), (m, n)


@pytest.mark.parametrize("bad", [(3, 6), (4, 12), (0, 1), (3, 11)])
def test_doubletool_ranges(bad):
    with pytest.raises(ParameterRange):
        doubletool(*bad)


@pytest.mark.parametrize("bad", [(2, 6), (0, 5)])
def test_tripletool_ranges(bad):
    with pytest.raises(ParameterRange):
        tripletool(*bad)


def test_tripletool_tessellation_shape():
    S = tripletool_tessellation(1, 4)
    assert validate_tessellation(S) and len(S) == 8


def test_m_sequence():
    assert m_sequence(151, 10) == [74, 17]
    assert m_sequence(201, 201) == [99, 24, 5]


@pytest.mark.parametrize("n,x", [(151, 10), (201, 20), (199, 50), (201, 201), (131, 30)])
def test_sparse_trade_is_sparse(n, x):
    t, count = sparse_trade(n, x)
    assert validate_bitrade(t.T, t.T_mate)
    assert t.T.issubset(back_circulant(n))
    K = qnk_level(n, x)
    assert diagonal_band_hits(t.T, K) == count
    assert count <= sparse_bound(x)


@pytest.mark.parametrize("n,x", [(101, 5), (71, 2), (150, 10), (50, 60)])
def test_sparse_trade_parameter_range(n, x):
    with pytest.raises(ParameterRange):
        sparse_trade(n, x)
