import json
from fractions import Fraction

import numpy as np
import pytest

from app.algebra.curve import make_curve
from app.core.errors import CurveError, InvariantViolation, ParameterRangeError
from app.services import table_service
from app.services.code_service import CodeService
from app.services.table_service import TableService
from app.services.tower_service import TowerService
from app.services.verify_service import CURVES, SUITES, VerifyService, _random_divisor


def test_field_listing():
    out = CodeService.field_elements(3, 2)
    assert out["modulus"] == [1, 0, 1]
    assert len(out["elements"]) == 9
    assert out["elements"][0] == "0,0"


def test_curve_listing():
    out = CodeService.curve_places(3, 2)
    assert (out["genus"], out["places"]) == (1, 16)
    assert out["list"][-1] == "P_inf"


def test_rr_basis():
    assert CodeService.rr_basis(3, 4, a=[7])["dimension"] == 5


def test_build_and_dual():
    summary = CodeService.build(3, 4, a=[7])
    assert (summary.n, summary.k, summary.designed_d) == (27, 5, 20)
    assert summary.generator is None
    dual = CodeService.build(3, 4, a=[7], dual=True, include_generator=True)
    assert dual.k == 22
    assert len(dual.generator) == 22


def test_build_on_a_missing_curve():
    with pytest.raises(CurveError):
        CodeService.build(3, 3, a=[7])


def test_css_summary():
    summary = CodeService.css(3, 4, a=[15], b=[16])
    assert summary.params.label() == "[[27, 1, d>=11]]_9"
    assert summary.hx is None
    with_matrices = CodeService.css(3, 4, a=[15], b=[16], include_matrices=True)
    assert len(with_matrices.hx) == 13
    assert len(with_matrices.hz) == 13


def test_css_formula_only():
    summary = CodeService.css(5, 2, t1=11, t2=13, explicit=False)
    assert summary.params.label() == "[[46, 4, d>=20]]_25"


def test_nested_pair_lengths():
    with pytest.raises(ParameterRangeError):
        CodeService.nested_pair(make_curve(3, 4), [3], [7, 16])


def test_certify_code():
    result = CodeService.certify(3, 2, a=[3])
    assert (result.lower, result.upper, result.exact, result.method) == (12, 12, True, "exhaustive")


def test_certify_css_pair():
    result = CodeService.certify(3, 2, a=[3], b=[5])
    assert result.exact
    assert result.method == "css"
    assert result.lower >= result.designed_d == 3


def test_expand_summary():
    out = CodeService.expand(3, 4, a=[7])
    assert (out.code.n, out.code.k, out.code.q) == (54, 10, 3)
    assert out.basis == ["1,0", "0,1"]
    assert out.dual_basis == ["2,0", "0,1"]
    assert out.duality_holds


def test_expand_css_summary():
    summary = CodeService.expand_css(3, 4, a=[7], b=[24])
    assert summary.params.label() == "[[54, 34, d>=3]]_3"


def test_formula_tables_match():
    for which in (1, 2, 3):
        results = TableService.reproduce(which, explicit=False)
        assert all(r.status == "MATCH" for r in results)
        assert not any(r.explicit for r in results)
    assert len(TableService.reproduce(1, explicit=False)) == 25


def test_table_two_explicit():
    results = TableService.reproduce(2)
    assert [r.status for r in results] == ["MATCH"] * 5
    assert all(r.matrix_k == r.k for r in results)
    assert results[0].published == "[[26, 16, 3]]_9"
    assert results[0].inputs == "a=(3,4) b=(7,16)"


@pytest.mark.slow
def test_table_one_explicit():
    results = TableService.reproduce(1)
    assert all(r.status == "MATCH" for r in results)
    assert any(r.explicit for r in results)
    assert not all(r.explicit for r in results)


@pytest.mark.slow
def test_table_three_explicit():
    results = TableService.reproduce(3)
    assert all(r.status == "MATCH" and r.explicit for r in results)
    assert results[0].singleton_defect == 4


def test_unknown_table():
    with pytest.raises(ParameterRangeError):
        TableService.reproduce(7)


def test_bad_fixture(tmp_path, monkeypatch):
    bad = tmp_path / "tables.json"
    bad.write_text(json.dumps({"table1": [{"n": 27, "k": 1, "d": 3, "alphabet": 9, "q": 3, "m": 4, "a": [2], "b": [40]}]}))
    monkeypatch.setattr(table_service, "FIXTURES", bad)
    TableService.load_fixtures.cache_clear()
    try:
        with pytest.raises(InvariantViolation, match="fixture-range"):
            TableService.load_fixtures()
    finally:
        TableService.load_fixtures.cache_clear()


def test_tower_report():
    report = TowerService.report(16, 6)
    assert report.window == Fraction(1, 3)
    assert report.limit == Fraction(7, 60)
    assert len(report.levels) == len(report.schedules) == 6
    assert report.schedules[1].K == 5
    dumped = report.model_dump(mode="json")
    assert dumped["c"] == "1/10"


def test_tower_report_over_the_prime_field():
    report = TowerService.report(25, 3, prime=5)
    assert report.limit == Fraction(1, 10)
    assert all(s.alphabet == 5 for s in report.schedules)


def test_tower_report_skips_small_levels():
    report = TowerService.report(16, 2, t=12)
    assert report.schedules[0] is None
    assert report.schedules[1] is not None


@pytest.mark.parametrize(
    "kwargs",
    [
        {"q2": 9, "levels": 4},
        {"q2": 10, "levels": 4},
        {"q2": 16, "levels": 4, "c": Fraction(1, 2)},
        {"q2": 16, "levels": 4, "prime": 3},
        {"q2": 16, "levels": 4, "prime": 2, "t": 3},
    ],
)
def test_tower_report_errors(kwargs):
    with pytest.raises(ParameterRangeError):
        TowerService.report(**kwargs)


def test_tower_metrics():
    levels = TowerService.metrics(64, 3)
    assert [level.genus for level in levels] == [0, 49, 7 * 63]


def test_verify_single_suite():
    results = VerifyService.run(["gf"], seed=1)
    assert {r.suite for r in results} == {"gf"}
    assert all(r.passed for r in results)


def test_verify_is_reproducible():
    first = VerifyService.run(["css", "asymptotics"], seed=5)
    second = VerifyService.run(["css", "asymptotics"], seed=5)
    assert first == second
    assert all(r.passed for r in first)


def test_verify_unknown_suite():
    with pytest.raises(ParameterRangeError, match="unknown suites"):
        VerifyService.run(["nope"])


def test_verify_reports_failures(monkeypatch):
    def broken(rng):
        from app.services.verify_service import _check

        def trial():
            raise InvariantViolation("always", "broken on purpose")

        return [_check("broken", "always", trial, 2)]

    monkeypatch.setitem(SUITES, "broken", broken)
    (result,) = VerifyService.run(["broken"])
    assert not result.passed
    assert "always: broken on purpose" in result.detail


def test_random_divisors_have_the_requested_degree():
    rng = np.random.default_rng(3)
    c = make_curve(5, 2)
    supports = set()
    for extra in range(6):
        G = _random_divisor(rng, c, extra)
        assert G.degree == 2 * c.genus - 1 + extra
        assert all(P.is_rational for P in G.support)
        supports.add(G.support)
        with_q = _random_divisor(rng, c, extra, degree_two=True)
        assert with_q[c.degree_two_place] > 0
        assert with_q.degree == 2 * c.genus - 1 + extra
    assert len(supports) > 1


@pytest.mark.slow
def test_verify_algebra_suites():
    results = VerifyService.run(["riemann_roch", "agcode", "minweight"], seed=2)
    trials = {r.invariant: r.trials for r in results}
    assert all(trials[f"dimension-law({q},{m})"] == 200 for q, m in CURVES)
    assert trials["duality"] == 50
    assert trials["coset-designed-bound"] == 6
    assert all(r.passed for r in results), [r.detail for r in results if not r.passed]
