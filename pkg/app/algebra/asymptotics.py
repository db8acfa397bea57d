"""
Rate and relative-distance schedules for CSS codes along the Garcia-Stichtenoth
tower x_{i+1}^q + x_{i+1} = x_i^q / (x_i^{q-1} + 1) over F_{q^2}.

Only integer sequences are handled here: the genus closed form and the
rational-place lower bound of each level, and the parameter choices made at
that level. No code is constructed.
"""

import logging
from fractions import Fraction
from typing import List, Optional

from app.algebra.gf import prime_power
from app.core.errors import FieldError, InvariantViolation, ParameterRangeError
from app.models.tower import RateSchedule, TowerLevel

logger = logging.getLogger(__name__)

DUAL_BOUND_NOTE = (
    "dual-side bound reported both as (N - K - 2g - t + 1)/2 and as "
    "(N - K - 2g - t + 3)/2; the two-point and prime-field arguments state different constants"
)


def tower_genus(q: int, i: int) -> int:
    if i % 2 == 0:
        return (q ** (i // 2) - 1) ** 2
    return (q ** ((i - 1) // 2) - 1) * (q ** ((i + 1) // 2) - 1)


def tower_places(q: int, i: int) -> int:
    """Lower bound (q^2 - q) q^{i-1} on the rational places of level i."""
    return (q * q - q) * q ** (i - 1)


def gs_tower_metrics(q: int, levels: int) -> List[TowerLevel]:
    """
    Genus and place counts of the first ``levels`` tower levels over F_{q^2}.

    Args:
        q (int): Square root of the constant field size; a prime power.
        levels (int): Number of levels, at least 1.

    Returns:
        List[TowerLevel]: One entry per level; ``ratio`` is N_i / g_i, or None
        while g_i = 0.
    """

    try:
        prime_power(q)
    except FieldError as e:
        raise ParameterRangeError(str(e))
    if levels < 1:
        raise ParameterRangeError(f"levels must be at least 1, got {levels}")

    out = []
    for i in range(1, levels + 1):
        g, N = tower_genus(q, i), tower_places(q, i)
        ratio = Fraction(N, g) if g else None
        out.append(TowerLevel(q=q, index=i, genus=g, places=N, ratio=ratio))
    return out


def positive_rate_window(q: int) -> Fraction:
    """Upper end 1 - 2/(q - 1) of the admissible c; raises when it is not positive."""
    edge = 1 - Fraction(2, q - 1) if q > 1 else Fraction(0)
    if edge <= 0:
        raise ParameterRangeError(f"no positive-rate window for q = {q}")
    return edge


def limit_relative_distance(q: int, c: Fraction, r: Optional[int] = None) -> Fraction:
    """
    Limit of the relative-distance column.

    (1/2)(1 - 2/(q - 1) - c) over F_{q^2}; with r given (q = p^r), the
    expanded code over F_p reaches (1/4r)(1 - 2/(q - 1) - c).
    """

    c = Fraction(c)
    gap = 1 - Fraction(2, q - 1) - c
    return gap / 2 if r is None else gap / (4 * r)


def _check_c(q: int, c: Fraction) -> Fraction:
    c = Fraction(c)
    edge = positive_rate_window(q)
    if not 0 < c < edge:
        raise ParameterRangeError(f"c = {c} lies outside the window (0, {edge})")
    return c


def t_point_schedule(level: TowerLevel, c: Fraction, t: int) -> RateSchedule:
    """
    Parameters chosen at one level for a t-point construction.

    K = round(c N) clamped to [1, N - 2g - t], sum b = floor((N + 2g + K - t - 2)/2),
    sum a = sum b - K and d >= min(n - sum b, sum a - (2g - 2)) with n = N - t.

    Raises:
        ParameterRangeError: If c is outside the window, t < 1, or the level
            is too small to host any admissible K.
        InvariantViolation: If the chosen sums break 2g - 2 < sum a < sum b < n.
    """

    c = _check_c(level.q, c)
    if t < 1:
        raise ParameterRangeError(f"t must be at least 1, got {t}")
    N, g = level.places, level.genus
    n = N - t
    top = N - 2 * g - t
    if n <= 0 or top < 1:
        raise ParameterRangeError(f"level {level.index} has no admissible K for t = {t}")

    K = min(max(round(c * N), 1), top)
    sum_b = (N + 2 * g + K - t - 2) // 2
    sum_a = sum_b - K
    if not 2 * g - 2 < sum_a < sum_b < n:
        raise InvariantViolation(
            "schedule-feasibility", f"level {level.index}: sum a = {sum_a}, sum b = {sum_b}, n = {n}"
        )
    d = min(n - sum_b, sum_a - (2 * g - 2))
    return RateSchedule(
        level=level.index,
        alphabet=level.q**2,
        t=t,
        places=N,
        genus=g,
        n=n,
        K=K,
        sum_b=sum_b,
        sum_a=sum_a,
        d_lb=d,
        weak_bound=Fraction(N - K - 2 * g - t + 1, 2),
        strong_bound=Fraction(N - K - 2 * g - t + 3, 2),
        rate=Fraction(K, n),
        relative_distance=Fraction(d, n),
        length=n,
        dimension=K,
        note=DUAL_BOUND_NOTE,
    )


def two_point_schedule(level: TowerLevel, c: Fraction) -> RateSchedule:
    return t_point_schedule(level, c, 2)


def expansion_schedule(level: TowerLevel, c: Fraction, p: int, r: int) -> RateSchedule:
    """
    Two-point schedule expanded from F_{q^2} to F_p, q = p^r.

    Length 2r(N - 2), dimension 2rK; the distance bound is inherited unchanged.
    """

    if p**r != level.q:
        raise ParameterRangeError(f"{p}^{r} != q = {level.q}")
    base = two_point_schedule(level, c)
    length = 2 * r * base.n
    dimension = 2 * r * base.K
    return base.model_copy(
        update={
            "alphabet": p,
            "length": length,
            "dimension": dimension,
            "rate": Fraction(dimension, length),
            "relative_distance": Fraction(base.d_lb, length),
        }
    )
