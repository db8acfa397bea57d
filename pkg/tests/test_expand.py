import numpy as np
import pytest

from app.algebra import agcode
from app.algebra.curve import INFINITY, Divisor
from app.algebra.expand import expand_code, expand_matrix, expanded_css, verify_expansion_duality
from app.algebra.fflinalg import rowspace_contains
from app.algebra.gf import dual_basis, polynomial_basis
from app.core.errors import FieldError


def _one_point(c, a):
    return agcode.evaluation_code(c, Divisor.single(INFINITY, a), c.affine_places)


def test_expanding_the_unit_code(f9):
    C = agcode.linear_code(f9.GF([[1]]))
    E = expand_code(C)
    assert (E.n, E.k, E.q) == (2, 2, 3)


def test_expand_matrix_coordinates(f9):
    basis = polynomial_basis(f9)
    w = f9.generator
    M = f9.GF([[1, int(w), int(w + 1)]])
    assert np.array_equal(expand_matrix(M, basis).view(np.ndarray), [[1, 0, 0, 1, 1, 1]])


def test_expanded_one_point_code(hermitian):
    C = _one_point(hermitian, 7)
    E = expand_code(C)
    assert (E.n, E.k, E.q) == (54, 10, 3)
    assert E.designed_distance == C.designed_distance
    assert E.provenance.construction == "expanded"
    assert E.provenance.parent == C.provenance


@pytest.mark.parametrize("seed", range(5))
def test_duality_for_random_codes(f9, f25, seed):
    for field, k, n in [(f9, 3, 6), (f25, 2, 5)]:
        C = agcode.linear_code(field.random((k, n), seed=seed))
        assert verify_expansion_duality(C)


def test_duality_with_another_basis(f9):
    w = f9.generator
    basis = f9.GF([int(w), int(w**2)])
    C = agcode.linear_code(f9.random((2, 5), seed=11))
    assert verify_expansion_duality(C, basis)


def test_wrong_right_basis_breaks_duality(f9):
    basis = polynomial_basis(f9)
    assert not np.array_equal(dual_basis(basis), basis)
    results = [
        verify_expansion_duality(agcode.linear_code(f9.random((2, 5), seed=s)), basis, right_basis=basis)
        for s in range(10)
    ]
    assert not all(results)


def test_basis_from_another_field(f9, f25):
    C = agcode.linear_code(f9.random((1, 3), seed=0))
    with pytest.raises(FieldError):
        expand_code(C, polynomial_basis(f25))


def test_expansion_preserves_nesting(hermitian):
    small = expand_code(_one_point(hermitian, 7))
    large = expand_code(_one_point(hermitian, 24))
    assert rowspace_contains(small.generator, large.generator)


def test_expanded_css(hermitian):
    params, pair = expanded_css(_one_point(hermitian, 7), _one_point(hermitian, 24), p=3)
    assert (params.n, params.k, params.d_lb, params.q) == (54, 34, 3, 3)
    assert pair.n == 54


def test_expanded_css_wrong_prime(hermitian):
    with pytest.raises(FieldError):
        expanded_css(_one_point(hermitian, 7), _one_point(hermitian, 24), p=5)
