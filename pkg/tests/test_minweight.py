import itertools

import numpy as np
import pytest
from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from app.algebra import agcode, minweight
from app.algebra.curve import INFINITY, Divisor
from app.algebra.fflinalg import kernel
from app.algebra.gf import make_field
from app.core.errors import BudgetExceededError, CodeConstructionError


def _one_point(c, a):
    return agcode.evaluation_code(c, Divisor.single(INFINITY, a), c.affine_places)


@pytest.fixture(scope="module")
def c3(elliptic):
    return _one_point(elliptic, 3)


@pytest.fixture(scope="module")
def c5(elliptic):
    return _one_point(elliptic, 5)


def test_exhaustive_on_elliptic_code(c3):
    assert minweight.exhaustive_min_weight(c3) == 12


def test_search_agrees_with_enumeration(c3):
    assert minweight.bz_min_weight(c3) == (12, 12)


def test_zero_code(f9):
    zero = agcode.linear_code(f9.GF.Zeros((1, 6)))
    assert zero.k == 0
    assert minweight.exhaustive_min_weight(zero) == minweight.INFINITY
    assert minweight.bz_min_weight(zero) == (minweight.INFINITY, minweight.INFINITY)


def test_budget(hermitian):
    with pytest.raises(BudgetExceededError, match="use search"):
        minweight.exhaustive_min_weight(_one_point(hermitian, 7), budget=1000)


def test_search_budget_gives_bracket(c5):
    lower, upper = minweight.bz_min_weight(c5, budget=10)
    assert lower <= upper


def test_information_sets(c5):
    sets = minweight.information_sets(c5.generator)
    ranks = [r for _, r in sets]
    assert ranks[0] == 5
    assert sum(ranks) == 15
    for G_j, _ in sets:
        assert G_j.shape == (5, 15)


def test_coset_of_equal_codes_is_empty(c3):
    assert minweight.coset_min_weight(c3, c3) == minweight.INFINITY


def test_coset_over_zero_code(c3, f9):
    zero = agcode.linear_code(f9.GF.Zeros((1, 15)))
    assert minweight.coset_min_weight(c3, zero) == 12


def test_coset_needs_nested_codes(c3, c5):
    with pytest.raises(CodeConstructionError):
        minweight.coset_min_weight(c3, c5)
    with pytest.raises(CodeConstructionError):
        minweight.css_min_distance(c5, c3)


def test_coset_is_at_least_the_larger_code_distance(c3, c5):
    full = minweight.exhaustive_min_weight(c5)
    assert minweight.coset_min_weight(c5, c3) >= full >= c5.designed_distance


def test_css_distance_is_certified(c3, c5):
    lower, upper = minweight.css_min_distance(c3, c5)
    assert lower == upper
    assert lower >= 3


def test_workers_do_not_change_the_result(c5):
    assert minweight.bz_min_weight(c5, workers=1) == minweight.bz_min_weight(c5, workers=4)
    assert minweight.exhaustive_min_weight(c5, workers=3) == minweight.exhaustive_min_weight(c5)


@hsettings(max_examples=30, deadline=None)
@given(
    st.sampled_from([(3, 1), (3, 2), (2, 2)]),
    st.integers(1, 4),
    st.integers(2, 9),
    st.integers(0, 2**31 - 1),
)
def test_search_matches_enumeration(field, k, n, seed):
    F = make_field(*field)
    G = F.random((min(k, n), n), seed=seed)
    C = agcode.linear_code(G)
    d = minweight.exhaustive_min_weight(C)
    assert minweight.bz_min_weight(C) == (d, d)
    if C.k:
        rows = C.generator
        brute = min(
            np.count_nonzero((F.GF(m) @ rows).view(np.ndarray))
            for m in np.ndindex(*([F.order] * C.k))
            if any(m)
        )
        assert d == brute


def _counted(block, drawn):
    while True:
        drawn.append(block)
        yield block


def _recorded(batches, drawn):
    for block in batches:
        drawn.append(block)
        yield block


@pytest.mark.parametrize("workers,window", [(1, 1), (3, 6)])
def test_enumeration_stops_at_the_lower_bound(c3, workers, window):
    drawn = []
    block = np.array([[1, 0, 0], [0, 1, 0]])
    d = minweight._minimum_over(c3.generator, _counted(block, drawn), None, workers, stop_at=c3.n)
    assert d <= c3.n
    assert len(drawn) <= window


def test_enumeration_without_a_reachable_bound_reads_everything(c3):
    batches = list(minweight._projective_messages(c3.q, c3.k, 7))
    for workers in (1, 3):
        drawn = []
        d = minweight._minimum_over(c3.generator, _recorded(batches, drawn), None, workers, stop_at=0)
        assert d == 12
        assert len(drawn) == len(batches)


@pytest.mark.parametrize("a,b", [(3, 7), (5, 7)])
def test_coset_on_hermitian_matches_brute_force(hermitian, a, b):
    C1, C2 = _one_point(hermitian, a), _one_point(hermitian, b)
    GF = type(C2.generator)
    messages = GF(np.array(list(itertools.product(range(GF.order), repeat=C2.k))))
    words = messages @ C2.generator
    outside = np.any((words @ kernel(C1.generator).T).view(np.ndarray), axis=1)
    brute = int(np.count_nonzero(words[outside].view(np.ndarray), axis=1).min())

    d = minweight.coset_min_weight(C2, C1)
    assert d == brute
    assert d == minweight.coset_min_weight(C2, C1, workers=3)
    assert d >= C2.designed_distance == 27 - b
