"""Evaluation codes C_L(D, G), their duals, and designed-distance bookkeeping."""

import logging
from typing import Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from app.algebra.curve import Curve, Divisor, Place, PlaceKind
from app.algebra.fflinalg import Matrix, kernel, rank, row_basis
from app.algebra.gf import Field, field_of
from app.algebra.riemann_roch import riemann_roch_basis
from app.core.errors import (
    CodeConstructionError,
    InvariantViolation,
    MatrixShapeError,
    ParameterRangeError,
)

logger = logging.getLogger(__name__)


class Provenance(BaseModel):
    model_config = ConfigDict(frozen=True)

    construction: str
    q: Optional[int] = None
    m: Optional[int] = None
    genus: Optional[int] = None
    divisor: Optional[str] = None
    degree: Optional[int] = None
    places: Optional[str] = None
    parent: Optional["Provenance"] = None


class LinearCode(BaseModel):
    """
    A linear code given by a full-rank generator matrix.

    ``designed_distance`` bounds the minimum distance of this code and
    ``designed_dual_distance`` that of its dual; both come from the
    construction, never from a search. ``exact_distance`` is set only by
    certification.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    generator: Matrix
    provenance: Provenance = Provenance(construction="matrix")
    designed_distance: Optional[int] = None
    designed_dual_distance: Optional[int] = None
    exact_distance: Optional[int] = None

    @model_validator(mode="after")
    def _check_generator(self):
        if self.generator.ndim != 2:
            raise MatrixShapeError("generator must be a 2-D matrix")
        if self.generator.shape[0] and rank(self.generator) != self.generator.shape[0]:
            raise MatrixShapeError("generator rows are linearly dependent")
        return self

    @property
    def field(self) -> Field:
        return field_of(self.generator)

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @property
    def q(self) -> int:
        return self.field.order

    def parity_check(self) -> Matrix:
        return kernel(self.generator)

    def label(self) -> str:
        if self.exact_distance is not None:
            d = f"{self.exact_distance}"
        elif self.designed_distance is not None:
            d = f"d>={self.designed_distance}"
        else:
            d = "d=?"
        return f"[{self.n}, {self.k}, {d}]_{self.q}"


def linear_code(generator: Matrix, **metadata) -> LinearCode:
    """Wraps an arbitrary matrix as a code, reducing it to a basis of its row space first."""
    return LinearCode(generator=row_basis(generator), **metadata)


def designed_bounds(c: Curve, degG: int, n: int) -> Tuple[int, int]:
    """
    Goppa bounds for C_L(D, G) and C_Omega(D, G).

    Args:
        c (Curve): The curve, for its genus.
        degG (int): deg G.
        n (int): Length |D|.

    Returns:
        Tuple[int, int]: (n - deg G, deg G - (2g - 2)).

    Raises:
        ParameterRangeError: Unless 2g - 2 < deg G < n.
    """

    failures = []
    if degG <= 2 * c.genus - 2:
        failures.append(f"deg G = {degG} must exceed 2g - 2 = {2 * c.genus - 2}")
    if degG >= n:
        failures.append(f"deg G = {degG} must be below n = {n}")
    if failures:
        raise ParameterRangeError(failures)
    return n - degG, degG - (2 * c.genus - 2)


def default_places(c: Curve, G: Divisor) -> Tuple[Place, ...]:
    """All rational places outside supp G, in canonical order."""
    support = set(G.support)
    return tuple(P for P in c.rational_places if P not in support)


def _check_places(G: Divisor, D: Sequence[Place]) -> None:
    if len(set(D)) != len(D):
        raise CodeConstructionError("repeated places in D")
    if any(P.kind == PlaceKind.DEGREE_TWO for P in D):
        raise CodeConstructionError("D must consist of rational places")
    if set(D) & set(G.support):
        raise CodeConstructionError("supp G meets D")


def evaluation_code(c: Curve, G: Divisor, D: Optional[Sequence[Place]] = None) -> LinearCode:
    """
    Builds C_L(D, G) by evaluating a basis of L(G) at the places of D.

    Args:
        c (Curve): The curve.
        G (Divisor): The divisor.
        D (Optional[Sequence[Place]]): Evaluation places; defaults to every
            rational place outside supp G.

    Returns:
        LinearCode: The code; for 2g - 2 < deg G < n its dimension is
        deg G + 1 - g and its designed distances are the Goppa bounds.

    Raises:
        CodeConstructionError: If supp G meets D or D repeats a place.
        InvariantViolation: If the dimension differs from deg G + 1 - g in
            the guaranteed range.
    """

    D = tuple(D) if D is not None else default_places(c, G)
    _check_places(G, D)
    n = len(D)

    basis = riemann_roch_basis(c, G)
    generator = row_basis(basis.evaluate(D))
    k = generator.shape[0]

    degG = G.degree
    in_range = 2 * c.genus - 2 < degG < n
    if in_range and k != degG + 1 - c.genus:
        raise InvariantViolation(
            "evaluation-dimension", f"C_L(D, {G}) has dimension {k}, expected {degG + 1 - c.genus}"
        )

    designed = n - degG if n - degG > 0 else None
    dual = degG - (2 * c.genus - 2) if degG - (2 * c.genus - 2) > 0 else None
    code = LinearCode(
        generator=generator,
        provenance=Provenance(
            construction="evaluation",
            q=c.q,
            m=c.m,
            genus=c.genus,
            divisor=repr(G),
            degree=degG,
            places=f"{n} rational places",
        ),
        designed_distance=designed,
        designed_dual_distance=dual,
    )
    logger.info("built C_L(D, %s) on %s: %s", G, c, code.label())
    return code


def dual_code(C: LinearCode) -> LinearCode:
    """Euclidean dual by kernel; designed distances swap roles."""
    return LinearCode(
        generator=row_basis(kernel(C.generator)),
        provenance=Provenance(construction="dual", parent=C.provenance),
        designed_distance=C.designed_dual_distance,
        designed_dual_distance=C.designed_distance,
    )


def omega_code(C: LinearCode) -> LinearCode:
    """
    C_Omega(D, G) realised as C_L(D, G)^perp.

    Raises:
        CodeConstructionError: If C is not an evaluation code with 2g - 2 < deg G < n.
        InvariantViolation: If the dual dimension is not n + g - 1 - deg G.
    """

    prov = C.provenance
    if prov.construction != "evaluation":
        raise CodeConstructionError("omega_code needs an evaluation code")
    g, degG = prov.genus, prov.degree
    if not 2 * g - 2 < degG < C.n:
        raise CodeConstructionError(f"deg G = {degG} is outside (2g - 2, n) = ({2 * g - 2}, {C.n})")

    dual = dual_code(C)
    expected = C.n + g - 1 - degG
    if dual.k != expected:
        raise InvariantViolation("dual-dimension", f"dimension {dual.k}, expected {expected}")
    return dual.model_copy(
        update={
            "provenance": Provenance(
                construction="omega",
                q=prov.q,
                m=prov.m,
                genus=g,
                divisor=prov.divisor,
                degree=degG,
                places=prov.places,
                parent=prov,
            ),
            "designed_distance": degG - (2 * g - 2),
            "designed_dual_distance": C.n - degG,
        }
    )


def with_exact_distance(C: LinearCode, d: int) -> LinearCode:
    """Records a certified minimum distance after checking it against the designed bound and Singleton."""
    if C.designed_distance is not None and d < C.designed_distance:
        raise InvariantViolation(
            "designed-bound", f"certified d = {d} below designed {C.designed_distance}"
        )
    if C.k + d > C.n + 1:
        raise InvariantViolation("singleton", f"k + d = {C.k + d} exceeds n + 1 = {C.n + 1}")
    return C.model_copy(update={"exact_distance": d})
