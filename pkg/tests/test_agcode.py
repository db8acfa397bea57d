import numpy as np
import pytest

from app.algebra import agcode
from app.algebra.curve import INFINITY, Divisor, tail_places
from app.algebra.fflinalg import same_rowspace, vstack
from app.core.errors import CodeConstructionError, InvariantViolation, ParameterRangeError


@pytest.fixture(scope="module")
def c7(hermitian):
    return agcode.evaluation_code(hermitian, Divisor.single(INFINITY, 7), hermitian.affine_places)


def test_one_point_code_parameters(c7):
    assert (c7.n, c7.k, c7.q) == (27, 5, 9)
    assert c7.designed_distance == 20
    assert c7.label() == "[27, 5, d>=20]_9"


def test_larger_one_point_code(hermitian):
    C = agcode.evaluation_code(hermitian, Divisor.single(INFINITY, 24), hermitian.affine_places)
    assert (C.n, C.k, C.designed_distance) == (27, 22, 3)


def test_zero_divisor_gives_constants(hermitian):
    C = agcode.evaluation_code(hermitian, Divisor())
    assert C.k == 1
    assert C.n == 28
    assert np.all(C.generator == 1)


def test_omega_code(c7):
    dual = agcode.omega_code(c7)
    assert dual.k == 22
    assert dual.designed_distance == 7 - 4
    assert not np.any((c7.generator @ dual.generator.T).view(np.ndarray))
    assert dual.provenance.construction == "omega"


def test_dual_of_dual(c7):
    assert same_rowspace(agcode.dual_code(agcode.dual_code(c7)).generator, c7.generator)


def test_omega_needs_evaluation_code(c7):
    with pytest.raises(CodeConstructionError):
        agcode.omega_code(agcode.dual_code(c7))


def test_designed_bounds(hermitian, hyperelliptic):
    assert agcode.designed_bounds(hermitian, 7, 27) == (20, 3)
    assert agcode.designed_bounds(hyperelliptic, 42, 46) == (4, 40)
    assert agcode.designed_bounds(hermitian, 5, 27)[1] == 1


def test_designed_bounds_out_of_range(hermitian):
    with pytest.raises(ParameterRangeError) as err:
        agcode.designed_bounds(hermitian, 30, 27)
    assert len(err.value.failures) == 1
    with pytest.raises(ParameterRangeError):
        agcode.designed_bounds(hermitian, 4, 27)


def test_support_must_avoid_places(hermitian):
    with pytest.raises(CodeConstructionError, match="supp G meets D"):
        agcode.evaluation_code(hermitian, Divisor.single(INFINITY, 7), hermitian.rational_places)


def test_repeated_places(hermitian):
    D = hermitian.affine_places[:3] * 2
    with pytest.raises(CodeConstructionError, match="repeated"):
        agcode.evaluation_code(hermitian, Divisor.single(INFINITY, 7), D)


def test_two_point_code_dimension(hermitian):
    support = tail_places(hermitian, 2)
    G = Divisor(dict(zip(support, [7, 16])))
    D = [P for P in hermitian.rational_places if P not in support]
    C = agcode.evaluation_code(hermitian, G, D)
    assert (C.n, C.k) == (26, 23 + 1 - 3)
    assert agcode.omega_code(C).k == 26 + 3 - 1 - 23


def test_exact_distance_checks(c7):
    assert agcode.with_exact_distance(c7, 21).exact_distance == 21
    with pytest.raises(InvariantViolation, match="designed-bound"):
        agcode.with_exact_distance(c7, 19)
    with pytest.raises(InvariantViolation, match="singleton"):
        agcode.with_exact_distance(c7, 24)


def test_linear_code_reduces_rows(f9):
    row = f9.GF([[1, 2, 3]])
    G = vstack(row, row + row)
    assert agcode.linear_code(G).k == 1
