"""
CSS quantum codes from nested pairs C1 < C2 and the parameter formulas of the
one-point, t-point and degree-2-place constructions.

Stabilizer convention: X-type rows generate C1, Z-type rows generate C2^perp,
so the pair commutes exactly when C1 is contained in C2.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from app.algebra.agcode import LinearCode, evaluation_code
from app.algebra.curve import Curve, Divisor, tail_places
from app.algebra.fflinalg import Matrix, kernel, rank, rowspace_contains
from app.core.errors import CodeConstructionError, InvariantViolation, ParameterRangeError
from app.models.quantum_params import QuantumParams

logger = logging.getLogger(__name__)

__all__ = [
    "QuantumParams",
    "StabilizerPair",
    "css_assemble",
    "t_point_params",
    "closed_form_params",
    "non_rational_params",
    "one_point_build",
    "t_point_build",
    "hyperelliptic_build",
    "singleton_defect",
    "is_mds",
]


class StabilizerPair(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    hx: Matrix
    hz: Matrix

    @model_validator(mode="after")
    def _check_commutation(self):
        if self.hx.shape[1] != self.hz.shape[1]:
            raise InvariantViolation("css-commutation", "X and Z rows have different lengths")
        if self.hx.shape[0] and self.hz.shape[0]:
            if np.any((self.hx @ self.hz.T).view(np.ndarray)):
                raise InvariantViolation("css-commutation", "H_X H_Z^T != 0")
        return self

    @property
    def n(self) -> int:
        return self.hx.shape[1]


def singleton_defect(n: int, k: int, d: int) -> int:
    return n + 2 - k - 2 * d


def is_mds(params: QuantumParams) -> bool:
    d = params.exact_d if params.exact_d is not None else params.d_lb
    return d is not None and params.k + 2 * d == params.n + 2


def css_assemble(C1: LinearCode, C2: LinearCode) -> Tuple[QuantumParams, StabilizerPair]:
    """
    Assembles the CSS code of a nested pair.

    Args:
        C1 (LinearCode): The smaller code, giving the X-type stabilizers.
        C2 (LinearCode): The larger code; C2^perp gives the Z-type stabilizers.

    Returns:
        Tuple[QuantumParams, StabilizerPair]: [[n, k2 - k1, d]]_q with d bounded
        below by min(designed distance of C2, designed dual distance of C1)
        when both are known.

    Raises:
        CodeConstructionError: If the codes differ in field or length, or C1 is not in C2.
    """

    if C1.field != C2.field or C1.n != C2.n:
        raise CodeConstructionError(
            f"cannot pair a code of length {C1.n} over {C1.field} with one of length {C2.n} over {C2.field}"
        )
    if not rowspace_contains(C1.generator, C2.generator):
        raise CodeConstructionError("C1 ⊄ C2")

    pair = StabilizerPair(hx=C1.generator, hz=kernel(C2.generator))
    k = C2.k - C1.k
    if rank(pair.hx) + rank(pair.hz) != C1.n - k:
        raise InvariantViolation("css-rank", f"stabilizer ranks do not add up to n - k = {C1.n - k}")

    bounds = [C2.designed_distance, C1.designed_dual_distance]
    d_lb = min(bounds) if None not in bounds else None
    params = QuantumParams(n=C1.n, k=k, d_lb=d_lb, q=C1.q)
    logger.info("assembled %s", params.label())
    return params, pair


def _range_failures(g: int, n: int, a: Sequence[int], b: Sequence[int], sum_a: int, sum_b: int):
    failures = []
    if len(a) != len(b):
        failures.append(f"a and b have different lengths {len(a)} and {len(b)}")
    for i, (ai, bi) in enumerate(zip(a, b)):
        if ai > bi:
            failures.append(f"a[{i}] = {ai} exceeds b[{i}] = {bi}")
        if ai < 0:
            failures.append(f"a[{i}] = {ai} is negative")
    if sum_a <= 2 * g - 2:
        failures.append(f"sum a = {sum_a} must exceed 2g - 2 = {2 * g - 2}")
    if sum_b < sum_a:
        failures.append(f"sum b = {sum_b} is below sum a = {sum_a}")
    if sum_b >= n:
        failures.append(f"sum b = {sum_b} must be below n = {n}")
    return failures


def t_point_params(c: Curve, a: Sequence[int], b: Sequence[int]) -> QuantumParams:
    """
    Parameters of the CSS code from G1 = sum a_i P_i < G2 = sum b_i P_i on t rational places.

    Raises:
        ParameterRangeError: Listing every violated inequality of
            a_i <= b_i and 2g - 2 < sum a <= sum b < n = N - t.
    """

    t = len(a)
    n = c.place_count - t
    sum_a, sum_b = sum(a), sum(b)
    failures = []
    if t < 1:
        failures.append("at least one support place is needed")
    failures += _range_failures(c.genus, n, a, b, sum_a, sum_b)
    if failures:
        raise ParameterRangeError(failures)
    return QuantumParams(
        n=n,
        k=sum_b - sum_a,
        d_lb=min(n - sum_b, sum_a - (2 * c.genus - 2)),
        q=c.field.order,
    )


def closed_form_params(q: int, m: int, a: Sequence[int], b: Sequence[int]) -> QuantumParams:
    """The same parameters written in (q, m) only, without building the curve."""
    t = len(a)
    g = (q - 1) * (m - 1) // 2
    affine = q * (1 + (q - 1) * m)
    n = affine - t + 1
    sum_a, sum_b = sum(a), sum(b)
    failures = _range_failures(g, n, a, b, sum_a, sum_b)
    if failures:
        raise ParameterRangeError(failures)
    return QuantumParams(
        n=n,
        k=sum_b - sum_a,
        d_lb=min(affine - sum_b - t + 1, sum_a - (q - 1) * (m - 1) + 2),
        q=q * q,
    )


def non_rational_params(
    a: Sequence[int],
    b: Sequence[int],
    degrees: Sequence[int],
    *,
    curve: Optional[Curve] = None,
    n: Optional[int] = None,
    g: Optional[int] = None,
    q: Optional[int] = None,
) -> QuantumParams:
    """
    Parameters for G1 = sum a_i Q_i < G2 = sum b_i Q_i with places Q_i of degree alpha_i.

    Either ``curve`` or all of (n, g, q) must be given. With a curve, D is every
    rational place outside the support, so n = N minus the number of degree-1 Q_i.

    Returns:
        QuantumParams: [[n, sum (b_i - a_i) alpha_i, d >= min(n - sum b_i alpha_i,
        sum a_i alpha_i - (2g - 2))]].
    """

    if curve is not None:
        n = curve.place_count - sum(1 for alpha in degrees if alpha == 1)
        g = curve.genus
        q = curve.field.order
    if n is None or g is None or q is None:
        raise ParameterRangeError("give either a curve or all of n, g and q")

    failures = []
    if len(degrees) != len(a):
        failures.append(f"{len(degrees)} degrees given for {len(a)} places")
    if any(alpha < 1 for alpha in degrees):
        failures.append("place degrees must be positive")
    weighted_a = sum(ai * alpha for ai, alpha in zip(a, degrees))
    weighted_b = sum(bi * alpha for bi, alpha in zip(b, degrees))
    failures += _range_failures(g, n, a, b, weighted_a, weighted_b)
    if failures:
        raise ParameterRangeError(failures)
    return QuantumParams(
        n=n,
        k=weighted_b - weighted_a,
        d_lb=min(n - weighted_b, weighted_a - (2 * g - 2)),
        q=q,
    )


def _check_against_formula(params: QuantumParams, expected: QuantumParams) -> None:
    if (params.n, params.k, params.d_lb) != (expected.n, expected.k, expected.d_lb):
        raise InvariantViolation(
            "formula-matrix-agreement", f"matrices give {params.label()}, formula {expected.label()}"
        )


def t_point_build(c: Curve, a: Sequence[int], b: Sequence[int]) -> Tuple[QuantumParams, StabilizerPair]:
    """
    Explicit CSS code from G1 = sum a_i P_i and G2 = sum b_i P_i.

    The t support places are tail_places(c, t); D is every other rational place.
    """

    expected = t_point_params(c, a, b)
    support = tail_places(c, len(a))
    G1 = Divisor(dict(zip(support, a)))
    G2 = Divisor(dict(zip(support, b)))
    D = [P for P in c.rational_places if P not in set(support)]

    C1 = evaluation_code(c, G1, D)
    C2 = evaluation_code(c, G2, D)
    params, pair = css_assemble(C1, C2)
    _check_against_formula(params, expected)
    return params, pair


def one_point_build(c: Curve, a: int, b: int) -> Tuple[QuantumParams, StabilizerPair]:
    return t_point_build(c, [a], [b])


def hyperelliptic_build(c: Curve, t1: int, t2: int) -> Tuple[QuantumParams, StabilizerPair]:
    """
    CSS code from G_i = t_i Q for the first degree-2 place Q, D = all rational places.

    Args:
        c (Curve): The curve; the construction uses (5, 2) in practice.
        t1 (int): Coefficient of the smaller divisor.
        t2 (int): Coefficient of the larger divisor, t1 < t2.

    Returns:
        Tuple[QuantumParams, StabilizerPair]: [[N, 2(t2 - t1), d]]_{q^2}.
    """

    failures = []
    if t1 >= t2:
        failures.append(f"t1 = {t1} must be below t2 = {t2}")
    try:
        expected = non_rational_params([t1], [t2], [2], curve=c)
    except ParameterRangeError as e:
        failures += e.failures
    if failures:
        raise ParameterRangeError(failures)

    Q = c.degree_two_place
    D = c.rational_places
    C1 = evaluation_code(c, Divisor.single(Q, t1), D)
    C2 = evaluation_code(c, Divisor.single(Q, t2), D)
    params, pair = css_assemble(C1, C2)
    if params.k != 2 * (t2 - t1):
        raise InvariantViolation("formula-matrix-agreement", f"k = {params.k}, expected {2 * (t2 - t1)}")
    _check_against_formula(params, expected)
    return params, pair
