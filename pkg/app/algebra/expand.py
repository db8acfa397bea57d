"""
Subfield expansion of codes over F_{p^K} to F_p.

Coordinates are taken in a basis b of F_{p^K} over F_p: the coefficient of
b_i in a is Tr(a b'_i) with b' the trace-dual basis. The K coefficients of
position j occupy output positions jK .. jK + K - 1.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from app.algebra.agcode import LinearCode, Provenance, dual_code
from app.algebra.css import StabilizerPair, css_assemble
from app.algebra.fflinalg import Matrix, kernel, row_basis, same_rowspace
from app.algebra.gf import FieldElement, dual_basis, field_of, polynomial_basis, relative_trace
from app.core.errors import FieldError, InvariantViolation
from app.models.quantum_params import QuantumParams

logger = logging.getLogger(__name__)


def _resolve_basis(C: LinearCode, basis: Optional[FieldElement]) -> FieldElement:
    basis = polynomial_basis(C.field) if basis is None else basis.reshape(-1)
    if field_of(basis) != C.field:
        raise FieldError(f"basis lies in {field_of(basis)}, code is over {C.field}")
    return basis


def expand_matrix(M: Matrix, basis: FieldElement) -> Matrix:
    """
    Replaces every entry of M by its coordinate vector in ``basis``.

    Args:
        M (Matrix): r x n matrix over F_{p^K}.
        basis (FieldElement): K elements forming a basis over F_p.

    Returns:
        Matrix: r x nK matrix over F_p.

    Raises:
        FieldError: If ``basis`` is not a basis.
    """

    field = field_of(M)
    dual = dual_basis(basis)
    rows, n = M.shape
    coordinates = relative_trace(M.reshape(rows, n, 1) * dual.reshape(1, 1, -1), 1)
    values = coordinates.view(np.ndarray).reshape(rows, n * field.k)
    if np.any(values >= field.p):
        raise InvariantViolation("expansion-coordinates", "trace left the prime field")
    return field.prime_field.GF(values)


def expand_code(C: LinearCode, basis: Optional[FieldElement] = None) -> LinearCode:
    """
    Expansion b(C): every codeword of C written coordinatewise in ``basis``.

    Generators are b_i * g for each generator g of C and each basis element
    b_i, so the expansion has dimension K k. Designed distances carry over:
    b(C) has weight at least that of C, and its dual b'(C^perp) that of C^perp.

    Args:
        C (LinearCode): Code over F_{p^K}.
        basis (Optional[FieldElement]): Defaults to the polynomial basis.

    Returns:
        LinearCode: The expanded code over F_p, length K n.
    """

    basis = _resolve_basis(C, basis)
    K = C.field.k
    scaled = (C.generator.reshape(C.k, 1, C.n) * basis.reshape(1, K, 1)).reshape(C.k * K, C.n)
    generator = row_basis(expand_matrix(scaled, basis))
    if generator.shape[0] != K * C.k:
        raise InvariantViolation("expansion-dimension", f"rank {generator.shape[0]}, expected {K * C.k}")
    return LinearCode(
        generator=generator,
        provenance=Provenance(construction="expanded", parent=C.provenance),
        designed_distance=C.designed_distance,
        designed_dual_distance=C.designed_dual_distance,
    )


def verify_expansion_duality(
    C: LinearCode, basis: Optional[FieldElement] = None, right_basis: Optional[FieldElement] = None
) -> bool:
    """
    Checks [b(C)]^perp = b'(C^perp) as row spaces over F_p.

    ``right_basis`` replaces the dual basis b' on the right-hand side; passing
    anything other than the dual basis generally breaks the identity.
    """

    basis = _resolve_basis(C, basis)
    right = dual_basis(basis) if right_basis is None else right_basis
    left = kernel(expand_code(C, basis).generator)
    expanded_dual = expand_code(dual_code(C), right).generator
    return same_rowspace(left, expanded_dual)


def expanded_css(
    C1: LinearCode, C2: LinearCode, p: Optional[int] = None, basis: Optional[FieldElement] = None
) -> Tuple[QuantumParams, StabilizerPair]:
    """
    CSS code over F_p from the expansions of a nested pair over F_{p^K}.

    Returns:
        Tuple[QuantumParams, StabilizerPair]: [[K n, K (k2 - k1), d]]_p with the
        inherited bound d >= min(designed d of C2, designed dual d of C1).

    Raises:
        FieldError: If the code field is not an extension of F_p.
    """

    field = C1.field
    if p is not None and p != field.p:
        raise FieldError(f"{field} is not an extension of F_{p}")
    params, pair = css_assemble(expand_code(C1, basis), expand_code(C2, basis))
    if params.k != field.k * (C2.k - C1.k):
        raise InvariantViolation("expanded-css-dimension", f"k = {params.k}")
    logger.info("expanded %d-dimensional CSS code over %s to %s", C2.k - C1.k, field, params.label())
    return params, pair
