import pytest
from hypothesis import given, strategies as st

from kstrong.errors import ContainmentViolated, IndexRange, InvalidPLS
from kstrong.pls import (PLS, LatinSquare, Shift, back_circulant, diagonal, diagonal_index,
                         is_back_circulant, negate, shift, transpose)

from strategies import shifts, subsets_of_bn


def test_back_circulant_order_two():
    assert back_circulant(2).to_rows() == [[0, 1], [1, 0]]


def test_back_circulant_cells():
    assert back_circulant(4)[1, 2] == 3
    assert back_circulant(11)[7, 7] == 3


def test_back_circulant_is_latin():
    for n in range(1, 9):
        B = back_circulant(n)
        assert isinstance(B, LatinSquare) and B.is_full()
        LatinSquare(n, B.triples)  # full validation


def test_shift_single_triple():
    S = PLS(5, [(0, 0, 0)])
    assert shift(S, 1, 1) == PLS(5, [(1, 1, 2)])


def test_shift_fixes_whole_square():
    B = back_circulant(5)
    assert all(shift(B, a, b) == B for a in range(5) for b in range(5))


def test_shift_requires_containment():
    with pytest.raises(ContainmentViolated):
        shift(PLS(3, [(0, 0, 1)]), 1, 0)
    assert shift(PLS(3, [(0, 0, 1)]), 1, 0, check=False) == PLS(3, [(1, 0, 2)])


def test_shift_inverse_tuple():
    assert Shift(2, -3).inverse() == Shift(-2, 3)


def test_transpose_examples():
    assert transpose(PLS(3, [(0, 1, 1)])) == PLS(3, [(1, 0, 1)])
    assert transpose(back_circulant(6)) == back_circulant(6)


def test_negate_is_automorphism():
    for n in range(1, 8):
        assert negate(back_circulant(n)) == back_circulant(n)


def test_diagonal_formula():
    assert diagonal(4, 0) == PLS(4, [(0, 0, 0), (1, 1, 2), (2, 2, 0), (3, 3, 2)])
    assert (0, 1, 1) in diagonal(11, 1)
    with pytest.raises(IndexRange):
        diagonal(4, 4)


@pytest.mark.parametrize("n", range(1, 12))
def test_diagonals_partition_bn(n):
    seen = {}
    for i in range(n):
        D = diagonal(n, i)
        assert len(D) == n
        for cell in D.cells:
            assert cell not in seen
            assert diagonal_index(n, cell) == i
            seen[cell] = i
    assert len(seen) == n * n
    union = PLS(n, [t for i in range(n) for t in diagonal(n, i).triples])
    assert union == back_circulant(n)


def test_duplicate_symbol_in_row_rejected():
    with pytest.raises(InvalidPLS, match="row 0"):
        PLS(3, [(0, 0, 1), (0, 2, 1)])


def test_duplicate_symbol_in_column_rejected():
    with pytest.raises(InvalidPLS, match="column 1"):
        PLS(3, [(0, 1, 2), (2, 1, 2)])


def test_cell_filled_twice_rejected():
    with pytest.raises(InvalidPLS):
        PLS(3, [(0, 0, 1), (0, 0, 2)])


def test_out_of_range_rejected():
    with pytest.raises(InvalidPLS):
        PLS(3, [(0, 3, 0)])
    with pytest.raises(InvalidPLS):
        PLS(0, [])


def test_latin_square_needs_all_cells():
    with pytest.raises(InvalidPLS):
        LatinSquare(2, [(0, 0, 0)])


def test_set_algebra():
    B = back_circulant(3)
    A = PLS(3, [(0, 0, 0), (1, 1, 2)])
    C = PLS(3, [(1, 1, 2), (2, 2, 1)])
    assert A <= B and A < B and not B < B
    assert A.union(C) == PLS(3, [(0, 0, 0), (1, 1, 2), (2, 2, 1)])
    assert A.intersection(C) == PLS(3, [(1, 1, 2)])
    assert A.difference(C) == PLS(3, [(0, 0, 0)])
    assert A.without([(0, 0, 0)]) == PLS(3, [(1, 1, 2)])
    assert A.with_triples([(2, 2, 1)]) == A.union(C)
    assert A.cell_mask() == (1 << 0) | (1 << 4)


def test_order_independent_equality():
    a = PLS(4, [(0, 0, 0), (3, 1, 0)])
    b = PLS(4, [(3, 1, 0), (0, 0, 0)])
    assert a == b and hash(a) == hash(b)
    assert a.triples == tuple(sorted(a.triples))


def test_is_back_circulant():
    assert is_back_circulant(back_circulant(5))
    assert not is_back_circulant(PLS(2, [(0, 0, 0)]))


@given(subsets_of_bn(), shifts)
def test_shift_round_trip(S, ab):
    a, b = ab
    moved = shift(S, a, b)
    assert len(moved) == len(S)
    assert moved.issubset(back_circulant(S.n))
    assert shift(moved, -a, -b) == S


@given(subsets_of_bn())
def test_transpose_is_involution(S):
    assert transpose(transpose(S)) == S
    assert transpose(S).issubset(back_circulant(S.n))


@given(st.integers(1, 9), st.data())
def test_shift_of_diagonal_is_diagonal(n, data):
    i = data.draw(st.integers(0, n - 1))
    a = data.draw(st.integers(0, n - 1))
    b = data.draw(st.integers(0, n - 1))
    assert shift(diagonal(n, i), a, b) == diagonal(n, (i + b - a) % n)
