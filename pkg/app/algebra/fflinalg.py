"""Dense exact linear algebra over finite fields with first-nonzero pivoting."""

import logging
from typing import Sequence, Tuple

import galois
import numpy as np

from app.algebra.gf import Field, embedding, field_of, frobenius, relative_trace
from app.core.errors import FieldError, InvariantViolation, MatrixShapeError

logger = logging.getLogger(__name__)

Matrix = galois.FieldArray


def _check_matrix(M) -> None:
    if not isinstance(M, galois.FieldArray) or M.ndim != 2:
        raise MatrixShapeError("expected a 2-D field matrix")


def as_matrix(field: Field, rows: Sequence[Sequence[int]], cols: int = None) -> Matrix:
    """Builds a matrix from integer-encoded entries; ``cols`` is needed for zero rows."""
    values = np.asarray(rows, dtype=np.int64)
    if values.size == 0:
        return field.GF.Zeros((0, cols or 0))
    return field.GF(values.reshape(len(rows), -1))


def vstack(*matrices: Matrix) -> Matrix:
    for M in matrices:
        _check_matrix(M)
    first = matrices[0]
    for M in matrices[1:]:
        if type(M) is not type(first):
            raise FieldError("cannot stack matrices over different fields")
        if M.shape[1] != first.shape[1]:
            raise MatrixShapeError(f"column counts differ: {first.shape[1]} and {M.shape[1]}")
    stacked = np.concatenate([M.view(np.ndarray) for M in matrices], axis=0)
    return type(first)(stacked)


def is_zero(M: Matrix) -> bool:
    return not np.any(M.view(np.ndarray))


def rref(M: Matrix) -> Tuple[Matrix, int, Tuple[int, ...]]:
    """
    Reduced row echelon form by Gaussian elimination.

    The pivot in each column is the first nonzero entry at or below the current
    row, so the result is deterministic.

    Args:
        M (Matrix): The matrix.

    Returns:
        Tuple[Matrix, int, Tuple[int, ...]]: (R, rank, pivot columns).
    """

    _check_matrix(M)
    R = M.copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.flatnonzero(R[r:, c].view(np.ndarray))
        if nonzero.size == 0:
            continue
        p = r + int(nonzero[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = R[r] / R[r, c]
        factors = R[:, c].copy()
        factors[r] = 0
        R = R - factors.reshape(-1, 1) * R[r].reshape(1, -1)
        pivots.append(c)
        r += 1
    return R, r, tuple(pivots)


def rank(M: Matrix) -> int:
    return rref(M)[1]


def row_basis(M: Matrix) -> Matrix:
    """The nonzero rows of rref(M): a canonical basis of the row space."""
    R, r, _ = rref(M)
    return R[:r]


def kernel(M: Matrix) -> Matrix:
    """
    Basis of the right null space, one vector per row.

    Args:
        M (Matrix): An m x n matrix.

    Returns:
        Matrix: (n - rank) x n matrix K with M @ K.T == 0.
    """

    R, r, pivots = rref(M)
    cols = M.shape[1]
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    GF = type(M)
    K = GF.Zeros((len(free), cols))
    if free:
        K[:, free] = GF.Identity(len(free))
        if r:
            K[:, list(pivots)] = -R[:r][:, free].T
    return K


def rowspace_contains(A: Matrix, B: Matrix) -> bool:
    """True iff every row of A lies in the row space of B."""
    _check_matrix(A)
    _check_matrix(B)
    if type(A) is not type(B):
        raise MatrixShapeError("matrices are over different fields")
    if A.shape[1] != B.shape[1]:
        raise MatrixShapeError(f"column counts differ: {A.shape[1]} and {B.shape[1]}")
    if A.shape[0] == 0 or is_zero(A):
        return True
    return rank(vstack(B, A)) == rank(B)


def same_rowspace(A: Matrix, B: Matrix) -> bool:
    return rowspace_contains(A, B) and rowspace_contains(B, A)


def frobenius_fixed_subspace(V: Matrix, subfield: Field) -> Matrix:
    """
    Galois descent of a row space.

    V spans a space over F_{p^K} that is stable under coordinatewise
    x -> x^{p^s}, where s is the degree of ``subfield``. The fixed vectors form
    a subfield space of the same dimension, spanned by the traces Tr(w^i v)
    for v in V and w the generator of F_{p^K}.

    Args:
        V (Matrix): Matrix over the big field.
        subfield (Field): F_{p^s}, with s dividing K.

    Returns:
        Matrix: Basis over ``subfield`` of the fixed space.

    Raises:
        FieldError: If the row space of V is not Galois-stable.
    """

    _check_matrix(V)
    big = field_of(V)
    s = subfield.k
    if subfield.p != big.p or big.k % s:
        raise FieldError(f"{subfield} is not a subfield of {big}")
    if V.shape[0] == 0:
        return subfield.GF.Zeros((0, V.shape[1]))

    V = row_basis(V)
    dimension = V.shape[0]
    if not rowspace_contains(frobenius(V, s), V):
        raise FieldError("not Galois-stable")

    traces = [relative_trace(V * big.generator**i, s) for i in range(big.k // s)]
    fixed = embedding(subfield, big).restrict(vstack(*traces))
    basis = row_basis(fixed)
    if basis.shape[0] != dimension:
        raise InvariantViolation(
            "descent-dimension", f"{dimension} over {big}, {basis.shape[0]} over {subfield}"
        )
    logger.debug("descended %d-dimensional space from %s to %s", dimension, big, subfield)
    return basis
