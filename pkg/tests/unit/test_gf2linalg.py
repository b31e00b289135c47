# tests/unit/test_gf2linalg.py
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core import gf2linalg as gf2
from src.core.gf2linalg import BitMatrix


@st.composite
def bit_matrices(draw, max_rows=8, max_cols=8):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    bits = draw(st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols),
                         min_size=rows, max_size=rows))
    return BitMatrix.from_array(np.array(bits))


@st.composite
def matrix_and_vector(draw):
    M = draw(bit_matrices())
    x = draw(st.lists(st.integers(0, 1), min_size=M.cols, max_size=M.cols))
    return M, np.array(x, dtype=np.uint8)


def test_rank_of_cyclic_matrix():
    M = BitMatrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert gf2.rank(M) == 2
    kernel = gf2.kernel_basis(M)
    assert len(kernel) == 1
    assert list(kernel[0]) == [1, 1, 1]


def test_identity_and_zero():
    assert gf2.rank(BitMatrix.identity(5)) == 5
    assert gf2.rank(BitMatrix.zeros(3, 4)) == 0
    assert BitMatrix.zeros(3, 4).is_zero()


def test_solve_inconsistent_system():
    M = BitMatrix.from_rows([[1, 1], [1, 1]])
    assert gf2.solve(M, [1, 0]) is None
    assert list(gf2.solve(M, [1, 1])) == [1, 0]


def test_supports_cancel_repeated_indices():
    M = BitMatrix.from_supports([[0, 0, 1]], 3)
    assert list(M.row(0)) == [0, 1, 0]


def test_packing_crosses_word_boundary():
    rows = np.zeros((2, 70), dtype=np.uint8)
    rows[0, 65] = 1
    rows[1, 3] = 1
    M = BitMatrix.from_array(rows)
    assert M[0, 65] == 1
    assert M[0, 64] == 0
    assert M.row(0)[65] == 1
    assert gf2.rank(M) == 2
    assert np.array_equal(M.to_array(), rows)


def test_bit_encoding():
    assert gf2.bits_to_int([1, 0, 1]) == 5
    assert list(gf2.int_to_bits(5, 4)) == [1, 0, 1, 0]


def test_matrix_is_immutable():
    M = BitMatrix.identity(2)
    with pytest.raises(ValueError):
        M.packed[0, 0] = 0


def test_shape_errors():
    M = BitMatrix.identity(2)
    with pytest.raises(ValueError):
        M.matvec([1, 0, 1])
    with pytest.raises(ValueError):
        M @ BitMatrix.identity(3)
    with pytest.raises(ValueError):
        BitMatrix.from_rows([[1, 0], [1]])


@given(bit_matrices())
def test_rank_equals_transpose_rank(M):
    assert gf2.rank(M) == gf2.rank(M.transpose())


@given(bit_matrices())
def test_kernel_vectors_are_annihilated(M):
    kernel = gf2.kernel_basis(M)
    assert len(kernel) == M.cols - gf2.rank(M)
    for v in kernel:
        assert not M.matvec(v).any()
    if kernel:
        assert gf2.span_rank(kernel, M.cols) == len(kernel)


@given(matrix_and_vector())
def test_solve_recovers_consistent_right_hand_side(data):
    M, x = data
    b = M.matvec(x)
    solution = gf2.solve(M, b)
    assert solution is not None
    assert np.array_equal(M.matvec(solution), b)


@settings(max_examples=50)
@given(bit_matrices(), st.data())
def test_row_combinations_lie_in_rowspace(M, data):
    mask = data.draw(st.lists(st.integers(0, 1), min_size=M.rows, max_size=M.rows))
    combination = np.zeros(M.cols, dtype=np.uint8)
    for i, bit in enumerate(mask):
        if bit:
            combination ^= M.row(i)
    assert gf2.in_rowspace(M, combination)


@given(matrix_and_vector())
def test_reduce_clears_pivots_and_stays_in_coset(data):
    M, v = data
    echelon = gf2.row_reduce(M)
    reduced = echelon.reduce(v)
    assert all(reduced[p] == 0 for p in echelon.pivots)
    assert echelon.contains(reduced ^ v)
    assert echelon.rank == gf2.rank(M)
