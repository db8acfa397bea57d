import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from app.algebra import agcode, css
from app.algebra.curve import INFINITY, Divisor, make_curve
from app.core.errors import CodeConstructionError, InvariantViolation, ParameterRangeError
from app.models.quantum_params import QuantumParams


def _one_point(c, a, D):
    return agcode.evaluation_code(c, Divisor.single(INFINITY, a), D)


def test_nested_one_point_pair(hermitian):
    D = hermitian.affine_places
    params, pair = css.css_assemble(_one_point(hermitian, 7, D), _one_point(hermitian, 24, D))
    assert (params.n, params.k, params.d_lb, params.q) == (27, 17, 3, 9)
    assert params.singleton_defect == 6
    assert pair.hx.shape == (5, 27)
    assert pair.hz.shape == (5, 27)


def test_equal_codes_give_no_logical_qudits(elliptic):
    C = _one_point(elliptic, 3, elliptic.affine_places)
    params, _ = css.css_assemble(C, C)
    assert params.k == 0


def test_pair_must_be_nested(elliptic):
    D = elliptic.affine_places
    with pytest.raises(CodeConstructionError, match="C1"):
        css.css_assemble(_one_point(elliptic, 5, D), _one_point(elliptic, 3, D))


def test_stabilizers_must_commute(f9):
    with pytest.raises(InvariantViolation, match="css-commutation"):
        css.StabilizerPair(hx=f9.GF([[1, 0]]), hz=f9.GF([[1, 0]]))


def test_small_exact_example(elliptic):
    D = elliptic.affine_places
    params, _ = css.css_assemble(_one_point(elliptic, 3, D), _one_point(elliptic, 5, D))
    assert params.label() == "[[15, 2, d>=3]]_9"


def test_t_point_params(hermitian):
    assert css.t_point_params(hermitian, [3, 4], [7, 16]) == QuantumParams(n=26, k=16, d_lb=3, q=9)
    assert css.t_point_params(hermitian, [15], [16]).label() == "[[27, 1, d>=11]]_9"
    assert css.t_point_params(hermitian, [9], [9]).k == 0


def test_t_point_params_lists_every_failure(hermitian):
    with pytest.raises(ParameterRangeError) as err:
        css.t_point_params(hermitian, [2, 1], [1, 30])
    assert len(err.value.failures) == 3


def test_non_rational_params():
    params = css.non_rational_params([3], [21], [2], n=46, g=2, q=25)
    assert (params.n, params.k, params.d_lb) == (46, 36, 4)
    for t1, t2 in [(4, 20), (11, 13), (7, 9)]:
        params = css.non_rational_params([t1], [t2], [2], n=46, g=2, q=25)
        assert params.k == 2 * (t2 - t1)
        assert params.d_lb == min(46 - 2 * t2, 2 * t1 - 2 * 2 + 2)
    assert css.non_rational_params([5], [5], [2], n=46, g=2, q=25).k == 0


def test_non_rational_params_on_curve(hyperelliptic):
    assert css.non_rational_params([11], [13], [2], curve=hyperelliptic).label() == "[[46, 4, d>=20]]_25"


def test_singleton_defect():
    assert css.singleton_defect(46, 36, 4) == 4
    assert css.singleton_defect(26, 16, 3) == 6
    assert css.is_mds(QuantumParams(n=5, k=1, d_lb=3, q=4))
    assert not css.is_mds(QuantumParams(n=27, k=17, d_lb=3, q=9))


def test_quantum_singleton_rejects_impossible_distance():
    with pytest.raises(ValueError):
        QuantumParams(n=5, k=3, exact_d=3, q=4)


@hsettings(max_examples=60, deadline=None)
@given(st.sampled_from([(3, 2), (3, 4), (4, 5), (5, 2), (5, 3), (7, 4)]), st.data())
def test_closed_form_agrees(qm, data):
    c = make_curve(*qm)
    n = c.place_count - 1
    a = data.draw(st.integers(2 * c.genus - 1, n - 1))
    b = data.draw(st.integers(a, n - 1))
    assert css.closed_form_params(*qm, [a], [b]) == css.t_point_params(c, [a], [b])


def test_one_point_build(hermitian):
    params, pair = css.one_point_build(hermitian, 15, 16)
    assert params.label() == "[[27, 1, d>=11]]_9"
    assert pair.n == 27


def test_two_point_build(hermitian):
    params, _ = css.t_point_build(hermitian, [3, 4], [7, 16])
    assert (params.n, params.k, params.d_lb) == (26, 16, 3)


@pytest.mark.slow
def test_hyperelliptic_build(hyperelliptic):
    params, pair = css.hyperelliptic_build(hyperelliptic, 11, 13)
    assert (params.n, params.k, params.d_lb) == (46, 4, 20)
    assert params.singleton_defect == 4
    assert pair.n == 46


def test_hyperelliptic_build_needs_increasing_coefficients(hyperelliptic):
    with pytest.raises(ParameterRangeError, match="t1"):
        css.hyperelliptic_build(hyperelliptic, 13, 11)
