import numpy as np
import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from app.algebra.agcode import evaluation_code
from app.algebra.curve import INFINITY, Divisor
from app.algebra.fflinalg import (
    as_matrix,
    frobenius_fixed_subspace,
    kernel,
    rank,
    rref,
    rowspace_contains,
    same_rowspace,
    vstack,
)
from app.algebra.gf import embed, make_field
from app.core.errors import FieldError, MatrixShapeError

SMALL_FIELDS = [(2, 2), (3, 1), (3, 2), (5, 1)]


def test_identity_is_reduced(f3):
    I = f3.GF.Identity(3)
    R, r, pivots = rref(I)
    assert np.array_equal(R, I)
    assert r == 3
    assert pivots == (0, 1, 2)


def test_zero_matrix(f3):
    R, r, pivots = rref(f3.GF.Zeros((2, 3)))
    assert r == 0 and pivots == ()


def test_rank_of_proportional_rows(f3):
    assert rank(as_matrix(f3, [[1, 1], [2, 2]])) == 1


def test_kernel_of_full_rank_square(f9):
    assert kernel(f9.GF.Identity(4)).shape == (0, 4)


def test_kernel_of_single_row(f3):
    K = kernel(as_matrix(f3, [[1, 1]]))
    assert K.shape == (1, 2)
    assert same_rowspace(K, as_matrix(f3, [[1, 2]]))


@hsettings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_rank_nullity(rows, cols, seed):
    F = make_field(3, 2)
    M = F.random((rows, cols), seed=seed)
    K = kernel(M)
    assert rank(M) + K.shape[0] == cols
    assert not np.any((M @ K.T).view(np.ndarray))


@hsettings(max_examples=50, deadline=None)
@given(st.sampled_from(SMALL_FIELDS), st.integers(1, 6), st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_rref_is_idempotent(field, rows, cols, seed):
    M = make_field(*field).random((rows, cols), seed=seed)
    R, r, pivots = rref(M)
    again, r_again, pivots_again = rref(R)
    assert np.array_equal(again, R)
    assert (r_again, pivots_again) == (r, pivots)
    assert same_rowspace(R, M)


@hsettings(max_examples=50, deadline=None)
@given(st.sampled_from(SMALL_FIELDS), st.integers(1, 6), st.integers(1, 8), st.integers(0, 2**31 - 1))
def test_double_kernel_is_the_row_space(field, rows, cols, seed):
    M = make_field(*field).random((rows, cols), seed=seed)
    K = kernel(M)
    assert K.shape == (cols - rank(M), cols)
    assert same_rowspace(kernel(K), M)


def test_rowspace_contains_trivial_cases(f9):
    A = f9.random((3, 5), seed=1)
    assert rowspace_contains(A, A)
    assert rowspace_contains(f9.GF.Zeros((2, 5)), A)


def test_rowspace_contains_rejects_other_field(f9, f25):
    with pytest.raises(MatrixShapeError):
        rowspace_contains(f9.GF.Zeros((1, 2)), f25.GF.Zeros((1, 2)))


def test_vstack_column_mismatch(f9):
    with pytest.raises(MatrixShapeError):
        vstack(f9.GF.Zeros((1, 2)), f9.GF.Zeros((1, 3)))


def test_one_point_codes_are_nested(hermitian):
    D = hermitian.affine_places
    small = evaluation_code(hermitian, Divisor.single(INFINITY, 7), D)
    large = evaluation_code(hermitian, Divisor.single(INFINITY, 24), D)
    assert rowspace_contains(small.generator, large.generator)
    assert not rowspace_contains(large.generator, small.generator)


def test_descent_keeps_subfield_space(f9, f81):
    V = f9.random((2, 4), seed=3)
    fixed = frobenius_fixed_subspace(embed(V, f81), f9)
    assert same_rowspace(fixed, V)


def test_descent_of_conjugate_line(f9, f3):
    w = f9.generator
    V = f9.GF([[int(w)], [int(w**3)]])
    fixed = frobenius_fixed_subspace(V, f3)
    assert fixed.shape == (1, 1)


def test_descent_rejects_unstable_space(f9, f3):
    w = f9.generator
    V = f9.GF([[1, int(w)]])
    with pytest.raises(FieldError, match="not Galois-stable"):
        frobenius_fixed_subspace(V, f3)
