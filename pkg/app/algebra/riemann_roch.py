"""
Riemann-Roch spaces on y^q + y = x^m.

Every f in L(G) is written g/h with h a monic polynomial in x whose zeros cover
the finite part of supp G, and g in the monomial space spanned by x^i y^j
(j < q, iq + jm <= M). Membership then reduces to linear vanishing conditions
on g at the points of the fibres of h, read off local power series in the
uniformizer t = x - alpha. A degree-2 place is handled over F_{q^4}, where it
splits, and the solution space is descended back to F_{q^2}.
"""

import functools
import logging
from typing import Dict, List, Sequence, Tuple

import galois
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from app.algebra.curve import INFINITY, Curve, Divisor, Place, PlaceKind
from app.algebra.fflinalg import Matrix, frobenius_fixed_subspace, kernel, row_basis, vstack
from app.algebra.gf import Field, FieldElement, embedding, field_of
from app.core.errors import DivisorError, EvaluationError, InvariantViolation, ParameterRangeError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int]


def monomials(c: Curve, bound: int) -> Tuple[Monomial, ...]:
    """x^i y^j with j < q and pole order iq + jm <= bound, by increasing pole order."""
    if bound < 0:
        return ()
    found = [
        (i, j)
        for j in range(c.q)
        for i in range(bound // c.q + 1)
        if i * c.q + j * c.m <= bound
    ]
    return tuple(sorted(found, key=lambda ij: ij[0] * c.q + ij[1] * c.m))


def _stack_columns(GF, columns: Sequence[FieldElement]) -> Matrix:
    return GF(np.stack([col.view(np.ndarray) for col in columns], axis=1))


def _unit_series(GF, precision: int) -> FieldElement:
    series = GF.Zeros(precision)
    series[0] = 1
    return series


def _series_mul(a: FieldElement, b: FieldElement, precision: int) -> FieldElement:
    return np.convolve(a, b)[:precision]


def _series_power(base: FieldElement, e: int, precision: int) -> FieldElement:
    result = _unit_series(type(base), precision)
    for _ in range(e):
        result = _series_mul(result, base, precision)
    return result


def _series_frobenius(y: FieldElement, q: int, precision: int) -> FieldElement:
    """y(t)^q, which in characteristic p only spreads the coefficients c_i^q to degree iq."""
    out = type(y).Zeros(precision)
    n = (precision + q - 1) // q
    out[0 : n * q : q] = y[:n] ** q
    return out


def _x_series(x: FieldElement, precision: int) -> FieldElement:
    series = type(x).Zeros(precision)
    series[0] = x
    if precision > 1:
        series[1] = 1
    return series


@functools.lru_cache(maxsize=4096)
def _y_series(c: Curve, field: Field, x: int, y: int, precision: int) -> FieldElement:
    GF = field.GF
    target = _series_power(_x_series(GF(x), precision), c.m, precision)

    steps, reach = 1, 1
    while reach < precision:
        reach *= c.q
        steps += 1

    series = GF.Zeros(precision)
    series[0] = y
    for _ in range(steps):
        series = series - (_series_frobenius(series, c.q, precision) + series - target)

    residual = _series_frobenius(series, c.q, precision) + series - target
    if np.any(residual.view(np.ndarray)):
        raise InvariantViolation("local-expansion", f"nonzero residual at ({x}, {y}) in {field}")
    return series


class LocalExpansion(BaseModel):
    """y as a power series in t = x - x0 around the point (x0, y0)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x0: FieldElement
    y0: FieldElement
    precision: int
    series: FieldElement

    def residual(self, c: Curve) -> FieldElement:
        target = _series_power(_x_series(self.x0, self.precision), c.m, self.precision)
        return _series_frobenius(self.series, c.q, self.precision) + self.series - target


def local_expansion(c: Curve, P: Place, precision: int) -> LocalExpansion:
    """
    Power series of y at an affine place by the iteration y <- y - (y^q + y - x^m).

    Args:
        c (Curve): The curve.
        P (Place): An affine rational place.
        precision (int): Number of coefficients to return.

    Returns:
        LocalExpansion: The truncated expansion; residual zero through t^{precision-1}.
    """

    if P.kind != PlaceKind.AFFINE:
        raise DivisorError(f"local expansions are taken at affine places, not {P}")
    if precision < 1:
        raise ParameterRangeError(f"precision must be at least 1, got {precision}")
    x, y = c.coordinates(P)
    return LocalExpansion(
        x0=x, y0=y, precision=precision, series=_y_series(c, c.field, P.x, P.y, precision)
    )


def _monomial_series(c: Curve, monos: Sequence[Monomial], x, y, precision: int) -> Matrix:
    """precision x len(monos) matrix of t-coefficients of each monomial at (x, y)."""
    GF = type(x)
    ys = _y_series(c, field_of(x), int(x), int(y), precision)
    xs = _x_series(x, precision)

    max_i = max(i for i, _ in monos)
    max_j = max(j for _, j in monos)
    xpow = [_unit_series(GF, precision)]
    for _ in range(max_i):
        xpow.append(_series_mul(xpow[-1], xs, precision))
    ypow = [_unit_series(GF, precision)]
    for _ in range(max_j):
        ypow.append(_series_mul(ypow[-1], ys, precision))

    return _stack_columns(GF, [_series_mul(xpow[i], ypow[j], precision) for i, j in monos])


def _monomial_values(monos: Sequence[Monomial], xs: FieldElement, ys: FieldElement) -> Matrix:
    """len(monos) x len(xs) matrix of x^i y^j at the given points."""
    GF = type(xs)
    max_i = max(i for i, _ in monos)
    max_j = max(j for _, j in monos)
    xpow = [GF.Ones(xs.size)]
    for _ in range(max_i):
        xpow.append(xpow[-1] * xs)
    ypow = [GF.Ones(ys.size)]
    for _ in range(max_j):
        ypow.append(ypow[-1] * ys)
    return _stack_columns(GF, [xpow[i] * ypow[j] for i, j in monos]).T


def _split_root(h: galois.Poly, alpha: FieldElement) -> Tuple[int, galois.Poly]:
    """(e, h / (x - alpha)^e) with e the multiplicity of alpha as a root of h."""
    linear = galois.Poly([1, int(-alpha)], field=h.field)
    e, rest = 0, h
    while rest.degree > 0 and rest(alpha) == 0:
        rest = rest // linear
        e += 1
    return e, rest


def _values_at_infinity(c: Curve, monos, coefficients: Matrix, h: galois.Poly) -> FieldElement:
    limit = c.q * h.degree
    above = [idx for idx, (i, j) in enumerate(monos) if i * c.q + j * c.m > limit]
    if above and np.any(coefficients[:, above].view(np.ndarray)):
        raise EvaluationError("evaluation at a pole")
    try:
        idx = monos.index((h.degree, 0))
    except ValueError:
        return type(coefficients).Zeros(coefficients.shape[0])
    return coefficients[:, idx]


def _evaluation_matrix(
    c: Curve, monos: Sequence[Monomial], coefficients: Matrix, h: galois.Poly, places: Sequence[Place]
) -> Matrix:
    GF = c.field.GF
    out = GF.Zeros((coefficients.shape[0], len(places)))
    if coefficients.shape[0] == 0 or not places:
        return out

    direct_cols, direct_x, direct_y = [], [], []
    for col, place in enumerate(places):
        if place.kind == PlaceKind.INFINITY:
            out[:, col] = _values_at_infinity(c, monos, coefficients, h)
            continue
        if place.kind != PlaceKind.AFFINE:
            raise EvaluationError(f"cannot evaluate at non-rational place {place}")
        x, y = c.coordinates(place)
        e, rest = _split_root(h, x)
        if e == 0:
            direct_cols.append(col)
            direct_x.append(place.x)
            direct_y.append(place.y)
            continue
        # h vanishes to order e here; the value is the t^e coefficient of g over h/(x-alpha)^e
        values = coefficients @ _monomial_series(c, monos, x, y, e + 1).T
        if np.any(values[:, :e].view(np.ndarray)):
            raise EvaluationError("evaluation at a pole")
        out[:, col] = values[:, e] / rest(x)

    if direct_cols:
        xs, ys = GF(direct_x), GF(direct_y)
        out[:, direct_cols] = (coefficients @ _monomial_values(monos, xs, ys)) / h(xs)
    return out


class FunctionRep(BaseModel):
    """A function g/h: numerator coefficients aligned with ``monomials``, monic denominator h(x)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    curve: Curve
    monomials: Tuple[Monomial, ...]
    numerator: FieldElement
    denominator: galois.Poly

    @model_validator(mode="after")
    def _check_monomials(self):
        if any(j >= self.curve.q or j < 0 or i < 0 for i, j in self.monomials):
            raise ValueError("monomial exponents must satisfy i >= 0 and 0 <= j < q")
        if self.numerator.shape != (len(self.monomials),):
            raise ValueError("numerator does not match the monomial list")
        return self

    @property
    def terms(self) -> Dict[Monomial, FieldElement]:
        return {mono: self.numerator[k] for k, mono in enumerate(self.monomials) if self.numerator[k] != 0}

    @property
    def numerator_pole_order(self) -> int:
        """Pole order at P_inf of g; -1 for g = 0."""
        orders = [i * self.curve.q + j * self.curve.m for i, j in self.terms]
        return max(orders, default=-1)

    def describe(self) -> str:
        field = self.curve.field
        terms = " + ".join(
            f"[{field.format(a)}]x^{i}y^{j}" for (i, j), a in self.terms.items()
        )
        h = " + ".join(
            f"[{field.format(a)}]x^{d}"
            for d, a in zip(self.denominator.degrees, self.denominator.coeffs)
            if a != 0
        )
        return f"({terms or '0'}) / ({h})"

    def evaluate(self, P: Place) -> FieldElement:
        return evaluate(self, P)


class RiemannRochBasis(BaseModel):
    """Basis of L(G) sharing one monomial list and one denominator."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    curve: Curve
    divisor: Divisor
    monomials: Tuple[Monomial, ...]
    coefficients: Matrix
    denominator: galois.Poly

    @property
    def dimension(self) -> int:
        return self.coefficients.shape[0]

    def functions(self) -> List[FunctionRep]:
        return [
            FunctionRep(
                curve=self.curve,
                monomials=self.monomials,
                numerator=self.coefficients[k],
                denominator=self.denominator,
            )
            for k in range(self.dimension)
        ]

    def evaluate(self, places: Sequence[Place]) -> Matrix:
        """dimension x len(places) matrix of basis values."""
        return _evaluation_matrix(self.curve, self.monomials, self.coefficients, self.denominator, places)


def one_point_basis(c: Curve, a: int) -> List[FunctionRep]:
    monos = monomials(c, a)
    GF = c.field.GF
    identity = GF.Identity(len(monos))
    one = galois.Poly.One(field=GF)
    return [
        FunctionRep(curve=c, monomials=monos, numerator=identity[k], denominator=one)
        for k in range(len(monos))
    ]


def _check_support(c: Curve, G: Divisor) -> None:
    if not G.is_effective():
        raise DivisorError(f"negative coefficients are not supported: {G}")
    non_rational = [P for P in G.support if P.kind == PlaceKind.DEGREE_TWO]
    if len(non_rational) > 1:
        raise DivisorError("at most one non-rational place may be in the support")
    for P in G.support:
        if P.kind not in (PlaceKind.AFFINE, PlaceKind.INFINITY, PlaceKind.DEGREE_TWO):
            raise DivisorError(f"unsupported place kind {P.kind}")
    c.check_divisor(G)


def minimal_polynomial(c: Curve, place: Place) -> galois.Poly:
    """(x - gamma)(x - gamma^{q^2}) over F_{q^2} for a degree-2 place with x-coordinate gamma."""
    quartic = c.quartic_field
    gamma = quartic.GF(place.x)
    conjugate = quartic.GF(place.conjugate[0])
    restrict = embedding(c.field, quartic).restrict
    coefficients = restrict(quartic.GF([1, int(-(gamma + conjugate)), int(gamma * conjugate)]))
    return galois.Poly(coefficients, field=c.field.GF)


def riemann_roch_basis(c: Curve, G: Divisor) -> RiemannRochBasis:
    """
    Computes a basis of L(G).

    Args:
        c (Curve): The curve.
        G (Divisor): Effective divisor supported on P_inf, affine rational
            places and at most one degree-2 place.

    Returns:
        RiemannRochBasis: Basis in reduced echelon form over F_{q^2}.

    Raises:
        DivisorError: If G is outside the supported class.
        InvariantViolation: If the dimension differs from deg G + 1 - g while
            deg G > 2g - 2.
    """

    _check_support(c, G)
    field = c.field
    GF = field.GF

    roots: Dict[int, int] = {}
    for place, a in G.items():
        if place.kind == PlaceKind.AFFINE:
            roots[place.x] = max(roots.get(place.x, 0), a)
    degree_two = [P for P in G.support if P.kind == PlaceKind.DEGREE_TWO]

    h = galois.Poly.One(field=GF)
    for alpha, e in roots.items():
        h *= galois.Poly([1, int(-GF(alpha))], field=GF) ** e
    if degree_two:
        h *= minimal_polynomial(c, degree_two[0]) ** G[degree_two[0]]

    monos = monomials(c, G[INFINITY] + c.q * h.degree)
    ext = c.quartic_field if degree_two else field
    lift = embedding(field, ext)

    blocks = []
    for alpha, e in roots.items():
        for x, y in c.fiber(GF(alpha), field):
            order = e - G[Place(kind=PlaceKind.AFFINE, x=alpha, y=int(y))]
            if order > 0:
                blocks.append(_monomial_series(c, monos, lift(x), lift(y), order))
    if degree_two:
        place = degree_two[0]
        order = G[place]
        own = {(place.x, place.y), place.conjugate}
        for gx, _ in c.geometric_points(place):
            for x, y in c.fiber(gx, ext):
                if (int(x), int(y)) not in own:
                    blocks.append(_monomial_series(c, monos, x, y, order))

    space = kernel(vstack(*blocks)) if blocks else ext.GF.Identity(len(monos))
    coefficients = frobenius_fixed_subspace(space, field) if degree_two else row_basis(space)

    dimension = coefficients.shape[0]
    expected = G.degree + 1 - c.genus
    if G.degree > 2 * c.genus - 2 and dimension != expected:
        raise InvariantViolation(
            "riemann-roch-dimension", f"l({G}) = {dimension}, expected {expected} on {c}"
        )
    logger.debug("l(%s) = %d on %s (%d monomials)", G, dimension, c, len(monos))
    return RiemannRochBasis(
        curve=c, divisor=G, monomials=monos, coefficients=coefficients, denominator=h
    )


def rr_space(c: Curve, G: Divisor) -> List[FunctionRep]:
    return riemann_roch_basis(c, G).functions()


def evaluate(f: FunctionRep, P: Place) -> FieldElement:
    values = _evaluation_matrix(
        f.curve, f.monomials, f.numerator.reshape(1, -1), f.denominator, [P]
    )
    return values[0, 0]
