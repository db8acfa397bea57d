"""
The curves y^q + y = x^m over F_{q^2} with m | q+1, their places and divisors.

P_inf is the unique pole of x; v_inf(x) = -q and v_inf(y) = -m because the
Artin-Schreier extension is totally ramified there. Every other place we need
is an affine point (rational, or a conjugate pair over F_{q^4}).
"""

import functools
import logging
import math
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from app.algebra.gf import Field, FieldElement, embedding, field_of, make_field, prime_power
from app.core.errors import CurveError, DivisorError, FieldError, InvariantViolation

logger = logging.getLogger(__name__)


class PlaceKind(str, Enum):
    AFFINE = "affine"
    INFINITY = "infinity"
    DEGREE_TWO = "degree2"


class Place(BaseModel):
    """
    A place of the curve.

    Coordinates are integer-encoded field elements: of F_{q^2} for affine
    places, of F_{q^4} for the representative point of a degree-2 place, whose
    Frobenius conjugate is kept in ``conjugate``.
    """

    model_config = ConfigDict(frozen=True)

    kind: PlaceKind
    x: Optional[int] = None
    y: Optional[int] = None
    conjugate: Optional[Tuple[int, int]] = None

    @property
    def degree(self) -> int:
        return 2 if self.kind == PlaceKind.DEGREE_TWO else 1

    @property
    def is_rational(self) -> bool:
        return self.kind != PlaceKind.DEGREE_TWO

    def __str__(self) -> str:
        if self.kind == PlaceKind.INFINITY:
            return "P_inf"
        if self.kind == PlaceKind.AFFINE:
            return f"P({self.x},{self.y})"
        return f"Q({self.x},{self.y})"


INFINITY = Place(kind=PlaceKind.INFINITY)


class Divisor:
    """Finite formal sum of places with integer coefficients."""

    def __init__(self, coefficients: Optional[Mapping[Place, int]] = None):
        self._coefficients: Dict[Place, int] = {
            place: int(a) for place, a in (coefficients or {}).items() if a != 0
        }

    @classmethod
    def single(cls, place: Place, a: int) -> "Divisor":
        return cls({place: a})

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Place, int]]) -> "Divisor":
        total: Dict[Place, int] = {}
        for place, a in pairs:
            total[place] = total.get(place, 0) + a
        return cls(total)

    def __getitem__(self, place: Place) -> int:
        return self._coefficients.get(place, 0)

    def items(self):
        return self._coefficients.items()

    @property
    def support(self) -> Tuple[Place, ...]:
        return tuple(self._coefficients)

    @property
    def degree(self) -> int:
        return sum(a * place.degree for place, a in self._coefficients.items())

    def is_effective(self) -> bool:
        return all(a >= 0 for a in self._coefficients.values())

    def __le__(self, other: "Divisor") -> bool:
        places = set(self._coefficients) | set(other._coefficients)
        return all(self[place] <= other[place] for place in places)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor.from_pairs([*self.items(), *other.items()])

    def __mul__(self, factor: int) -> "Divisor":
        return Divisor({place: factor * a for place, a in self.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash(frozenset(self._coefficients.items()))

    def __repr__(self) -> str:
        if not self._coefficients:
            return "0"
        return " + ".join(f"{a}*{place}" for place, a in self._coefficients.items())


class Curve:
    """y^q + y = x^m over F_{q^2}."""

    def __init__(self, q: int, m: int):
        try:
            p, r = prime_power(q)
        except FieldError as e:
            raise CurveError(str(e))
        if m < 1 or (q + 1) % m:
            raise CurveError(f"m={m} does not divide q+1={q + 1}")
        if math.gcd(q, m) != 1 or ((q - 1) * (m - 1)) % 2:
            raise InvariantViolation("curve-parameters", f"q={q}, m={m}")

        self.q = q
        self.m = m
        self.p = p
        self.r = r
        self.field = make_field(p, 2 * r)
        self.genus = (q - 1) * (m - 1) // 2
        self.pole_order_x = q
        self.pole_order_y = m
        self.place_count = 1 + q * (1 + (q - 1) * m)
        self._trace_tables: Dict[Field, Tuple[FieldElement, FieldElement]] = {}

    def __repr__(self) -> str:
        return f"y^{self.q} + y = x^{self.m} over {self.field}"

    def __eq__(self, other) -> bool:
        return isinstance(other, Curve) and (self.q, self.m) == (other.q, other.m)

    def __hash__(self) -> int:
        return hash((self.q, self.m))

    @functools.cached_property
    def quartic_field(self) -> Field:
        return make_field(self.p, 4 * self.r)

    def _trace_table(self, ext: Field) -> Tuple[FieldElement, FieldElement]:
        if ext not in self._trace_tables:
            ys = ext.ordered_elements()
            self._trace_tables[ext] = (ys, ys**self.q + ys)
        return self._trace_tables[ext]

    def contains_point(self, x, y) -> bool:
        return bool(y**self.q + y == x**self.m)

    def fiber(self, alpha, ext: Optional[Field] = None) -> List[Tuple[FieldElement, FieldElement]]:
        """All points (alpha, beta) with beta in ``ext``, beta in coefficient order."""
        ext = ext or field_of(alpha)
        if not ext.contains(alpha):
            raise CurveError(f"x-coordinate is not an element of {ext}")
        if ext.p != self.p or ext.k % self.field.k:
            raise CurveError(f"{ext} is not an extension of {self.field}")
        ys, traces = self._trace_table(ext)
        betas = ys[traces == alpha**self.m]
        return [(alpha, betas[i]) for i in range(betas.size)]

    @functools.cached_property
    def rational_places(self) -> Tuple[Place, ...]:
        xs, _ = self._trace_table(self.field)
        places = []
        for i in range(xs.size):
            for alpha, beta in self.fiber(xs[i], self.field):
                places.append(Place(kind=PlaceKind.AFFINE, x=int(alpha), y=int(beta)))
        places.append(INFINITY)
        if len(places) != self.place_count:
            raise InvariantViolation(
                "rational-place-count", f"enumerated {len(places)}, expected {self.place_count}"
            )
        logger.debug("%s has %d rational places", self, len(places))
        return tuple(places)

    @property
    def affine_places(self) -> Tuple[Place, ...]:
        return self.rational_places[:-1]

    @functools.cached_property
    def degree_two_place(self) -> Place:
        quartic = self.quartic_field
        xs, _ = self._trace_table(quartic)
        outside = ~embedding(self.field, quartic).contains(xs)
        s = self.q**2
        for i in np.flatnonzero(outside):
            points = self.fiber(xs[int(i)], quartic)
            if not points:
                continue
            alpha, beta = points[0]
            conj_x, conj_y = alpha**s, beta**s
            back = (int(conj_x**s), int(conj_y**s))
            if int(conj_x) == int(alpha) or back != (int(alpha), int(beta)):
                raise InvariantViolation("degree-2-orbit", f"orbit of ({alpha}, {beta}) is not of size 2")
            place = Place(
                kind=PlaceKind.DEGREE_TWO,
                x=int(alpha),
                y=int(beta),
                conjugate=(int(conj_x), int(conj_y)),
            )
            logger.debug("degree-2 place of %s: %s", self, place)
            return place
        raise CurveError("no degree-2 place")

    def coordinates(self, place: Place) -> Tuple[FieldElement, FieldElement]:
        if place.kind == PlaceKind.AFFINE:
            return self.field.GF(place.x), self.field.GF(place.y)
        if place.kind == PlaceKind.DEGREE_TWO:
            return self.quartic_field.GF(place.x), self.quartic_field.GF(place.y)
        raise CurveError("P_inf has no affine coordinates")

    def geometric_points(self, place: Place) -> List[Tuple[FieldElement, FieldElement]]:
        """The F_{q^4}-points of a degree-2 place, or the single point of an affine place."""
        if place.kind == PlaceKind.DEGREE_TWO:
            GF = self.quartic_field.GF
            return [(GF(place.x), GF(place.y)), (GF(place.conjugate[0]), GF(place.conjugate[1]))]
        return [self.coordinates(place)]

    def format_place(self, place: Place) -> str:
        if place.kind == PlaceKind.INFINITY:
            return "P_inf"
        field = self.field if place.kind == PlaceKind.AFFINE else self.quartic_field
        x, y = self.coordinates(place)
        return f"({field.format(x)};{field.format(y)})"

    def check_divisor(self, G: Divisor) -> None:
        """Raises DivisorError unless every place of supp G lies on this curve."""
        for place in G.support:
            if place.kind == PlaceKind.INFINITY:
                continue
            for x, y in self.geometric_points(place):
                if not self.contains_point(x, y):
                    raise DivisorError(f"{place} is not a point of {self}")


@functools.lru_cache(maxsize=None)
def make_curve(q: int, m: int) -> Curve:
    return Curve(q, m)


def rational_places(c: Curve) -> Tuple[Place, ...]:
    return c.rational_places


def fiber(c: Curve, alpha, ext: Optional[Field] = None) -> List[Tuple[FieldElement, FieldElement]]:
    return c.fiber(alpha, ext)


def find_degree2_place(c: Curve) -> Place:
    return c.degree_two_place


def tail_places(c: Curve, t: int) -> Tuple[Place, ...]:
    """
    Support of a t-point divisor: [P_inf] for t = 1, otherwise the last t affine places.

    Args:
        c (Curve): The curve.
        t (int): Number of places.

    Returns:
        Tuple[Place, ...]: The chosen places in canonical order.
    """

    if t < 1 or t >= c.place_count:
        raise CurveError(f"cannot choose {t} support places out of {c.place_count}")
    if t == 1:
        return (INFINITY,)
    return c.affine_places[-t:]
