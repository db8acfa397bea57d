import logging
import math
from fractions import Fraction
from typing import List, Optional

from app.algebra import asymptotics
from app.algebra.gf import prime_power
from app.core.errors import AGCodesError, FieldError, ParameterRangeError
from app.models.tower import RateSchedule, TowerLevel, TowerReport

logger = logging.getLogger(__name__)


def _root(q2: int) -> int:
    q = math.isqrt(q2)
    if q * q != q2:
        raise ParameterRangeError(f"{q2} is not the square of a prime power")
    try:
        prime_power(q)
    except FieldError as e:
        raise ParameterRangeError(str(e))
    return q


class TowerService:
    @staticmethod
    def metrics(q2: int, levels: int) -> List[TowerLevel]:
        return asymptotics.gs_tower_metrics(_root(q2), levels)

    @staticmethod
    def report(
        q2: int, levels: int, c: Fraction = Fraction(1, 10), t: int = 2, prime: Optional[int] = None
    ) -> TowerReport:
        """
        Tower metrics and the rate/relative-distance schedule of each level.

        Args:
            q2 (int): Size of the constant field F_{q^2}.
            levels (int): Number of tower levels.
            c (Fraction): Target rate, inside the positive-rate window.
            t (int): Support size of the divisors.
            prime (Optional[int]): Expand the two-point schedule to F_prime.

        Returns:
            TowerReport: Levels, schedules (None where a level admits no K)
            and the limiting relative distance.

        Raises:
            ParameterRangeError: If q2, c, t or prime are out of range.
        """

        try:
            q = _root(q2)
            c = Fraction(c)
            window = asymptotics.positive_rate_window(q)
            if not 0 < c < window:
                raise ParameterRangeError(f"c = {c} lies outside the window (0, {window})")
            r = None
            if prime is not None:
                p, r = prime_power(q)
                if p != prime:
                    raise ParameterRangeError(f"F_{q2} is not an extension of F_{prime}")
                if t != 2:
                    raise ParameterRangeError("the prime-field schedule uses the two-point construction")

            levels_out = asymptotics.gs_tower_metrics(q, levels)
            schedules: List[Optional[RateSchedule]] = []
            for level in levels_out:
                try:
                    if prime is not None:
                        schedules.append(asymptotics.expansion_schedule(level, c, prime, r))
                    else:
                        schedules.append(asymptotics.t_point_schedule(level, c, t))
                except ParameterRangeError as e:
                    logger.warning("level %d skipped: %s", level.index, e)
                    schedules.append(None)

            return TowerReport(
                q2=q2,
                c=c,
                t=t,
                prime=prime,
                window=window,
                limit=asymptotics.limit_relative_distance(q, c, r),
                levels=levels_out,
                schedules=schedules,
                note=asymptotics.DUAL_BOUND_NOTE,
            )
        except AGCodesError as e:
            logger.error(f"Tower schedule failed: {str(e)}")
            raise
