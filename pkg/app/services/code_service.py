import logging
import math
from typing import Dict, List, Optional, Sequence

import numpy as np

from app.algebra import agcode, css, expand, minweight
from app.algebra.curve import Curve, Divisor, make_curve, tail_places
from app.algebra.gf import dual_basis, make_field, polynomial_basis
from app.algebra.riemann_roch import riemann_roch_basis
from app.core.config import settings
from app.core.errors import AGCodesError, ParameterRangeError
from app.models.code_summary import CertificationResult, CodeSummary, CssSummary, ExpansionSummary

logger = logging.getLogger(__name__)


def _ints(M) -> List[List[int]]:
    return M.view(np.ndarray).tolist()


def _weight(value) -> Optional[int]:
    return None if value == math.inf else int(value)


class CodeService:
    @staticmethod
    def divisor(c: Curve, a: Optional[Sequence[int]] = None, t: Optional[int] = None) -> Divisor:
        """
        The divisor a request describes.

        Args:
            c (Curve): The curve.
            a (Optional[Sequence[int]]): Coefficients on tail_places(c, len(a)).
            t (Optional[int]): Coefficient of the first degree-2 place.

        Returns:
            Divisor: The divisor.
        """

        if t is not None:
            return Divisor.single(c.degree_two_place, t)
        if not a:
            raise ParameterRangeError("a divisor needs coefficients a or a degree-2 coefficient t")
        return Divisor(dict(zip(tail_places(c, len(a)), a)))

    @staticmethod
    def summarize(C: agcode.LinearCode, include_generator: bool = False) -> CodeSummary:
        return CodeSummary(
            n=C.n,
            k=C.k,
            q=C.q,
            designed_d=C.designed_distance,
            designed_dual_d=C.designed_dual_distance,
            exact_d=C.exact_distance,
            provenance=C.provenance.model_dump(exclude_none=True),
            generator=_ints(C.generator) if include_generator else None,
        )

    @staticmethod
    def field_elements(p: int, k: int) -> Dict[str, object]:
        field = make_field(p, k)
        return {
            "field": repr(field),
            "modulus": list(field.modulus),
            "elements": [field.format(a) for a in field.ordered_elements()],
        }

    @staticmethod
    def curve_places(q: int, m: int) -> Dict[str, object]:
        c = make_curve(q, m)
        return {
            "curve": repr(c),
            "genus": c.genus,
            "places": c.place_count,
            "list": [c.format_place(P) for P in c.rational_places],
        }

    @staticmethod
    def rr_basis(q: int, m: int, a: Optional[List[int]] = None, t: Optional[int] = None) -> Dict[str, object]:
        c = make_curve(q, m)
        G = CodeService.divisor(c, a, t)
        basis = riemann_roch_basis(c, G)
        return {
            "divisor": repr(G),
            "degree": G.degree,
            "dimension": basis.dimension,
            "functions": [f.describe() for f in basis.functions()],
        }

    @staticmethod
    def build(
        q: int,
        m: int,
        a: Optional[List[int]] = None,
        t: Optional[int] = None,
        dual: bool = False,
        include_generator: bool = False,
    ) -> CodeSummary:
        try:
            c = make_curve(q, m)
            C = agcode.evaluation_code(c, CodeService.divisor(c, a, t))
            if dual:
                C = agcode.omega_code(C)
            return CodeService.summarize(C, include_generator)
        except AGCodesError as e:
            logger.error(f"Code construction failed: {str(e)}")
            raise

    @staticmethod
    def nested_pair(c: Curve, a: List[int], b: List[int]):
        """C_L(D, G1) < C_L(D, G2) with D every rational place off the tail support."""
        if len(a) != len(b):
            raise ParameterRangeError(f"a and b have different lengths {len(a)} and {len(b)}")
        support = set(tail_places(c, len(a)))
        D = [P for P in c.rational_places if P not in support]
        G1 = CodeService.divisor(c, a)
        G2 = CodeService.divisor(c, b)
        return agcode.evaluation_code(c, G1, D), agcode.evaluation_code(c, G2, D)

    @staticmethod
    def css(
        q: int,
        m: int,
        a: Optional[List[int]] = None,
        b: Optional[List[int]] = None,
        t1: Optional[int] = None,
        t2: Optional[int] = None,
        explicit: bool = True,
        include_matrices: bool = False,
    ) -> CssSummary:
        """
        Parameters (and optionally stabilizers) of a CSS code.

        With (a, b) the t-point construction on the tail places is used, with
        (t1, t2) the degree-2-place one. ``explicit`` builds the matrices; the
        formulas alone are used otherwise.
        """

        try:
            c = make_curve(q, m)
            pair = None
            if t1 is not None and t2 is not None:
                if explicit:
                    params, pair = css.hyperelliptic_build(c, t1, t2)
                else:
                    params = css.non_rational_params([t1], [t2], [2], curve=c)
            elif explicit:
                params, pair = css.t_point_build(c, a, b)
            else:
                params = css.t_point_params(c, a, b)

            summary = CssSummary(params=params)
            if include_matrices and pair is not None:
                summary.hx = _ints(pair.hx)
                summary.hz = _ints(pair.hz)
            return summary
        except AGCodesError as e:
            logger.error(f"CSS construction failed: {str(e)}")
            raise

    @staticmethod
    def certify(
        q: int,
        m: int,
        a: List[int],
        b: Optional[List[int]] = None,
        dual: bool = False,
        budget: Optional[int] = None,
        workers: Optional[int] = None,
    ) -> CertificationResult:
        """
        Certifies a minimum distance.

        With ``b`` the CSS distance of the pair (a, b) is bracketed; otherwise
        the code C_L(D, G) (or its dual) is enumerated when q^k fits the
        exhaustive budget and searched with the information-set method when not.
        """

        try:
            c = make_curve(q, m)
            if b is not None:
                C1, C2 = CodeService.nested_pair(c, a, b)
                lower, upper = minweight.css_min_distance(C1, C2, budget=budget, workers=workers)
                params, _ = css.css_assemble(C1, C2)
                return CertificationResult(
                    lower=_weight(lower),
                    upper=_weight(upper),
                    exact=lower == upper,
                    method="css",
                    designed_d=params.d_lb,
                )

            C = agcode.evaluation_code(c, CodeService.divisor(c, a))
            if dual:
                C = agcode.omega_code(C)
            if C.q**C.k <= (settings.EXHAUSTIVE_BUDGET if budget is None else budget):
                d = minweight.exhaustive_min_weight(C, budget=budget, workers=workers)
                lower, upper, method = d, d, "exhaustive"
            else:
                lower, upper = minweight.bz_min_weight(C, budget=budget, workers=workers)
                method = "information-set"
            if lower == upper and lower != math.inf:
                agcode.with_exact_distance(C, int(lower))
            return CertificationResult(
                lower=_weight(lower),
                upper=_weight(upper),
                exact=lower == upper,
                method=method,
                designed_d=C.designed_distance,
            )
        except AGCodesError as e:
            logger.error(f"Certification failed: {str(e)}")
            raise

    @staticmethod
    def expand(q: int, m: int, a: List[int], include_generator: bool = False) -> ExpansionSummary:
        try:
            c = make_curve(q, m)
            C = agcode.evaluation_code(c, CodeService.divisor(c, a))
            basis = polynomial_basis(C.field)
            expanded = expand.expand_code(C, basis)
            return ExpansionSummary(
                code=CodeService.summarize(expanded, include_generator),
                basis=[C.field.format(x) for x in basis],
                dual_basis=[C.field.format(x) for x in dual_basis(basis)],
                duality_holds=expand.verify_expansion_duality(C, basis),
            )
        except AGCodesError as e:
            logger.error(f"Expansion failed: {str(e)}")
            raise

    @staticmethod
    def expand_css(q: int, m: int, a: List[int], b: List[int], include_matrices: bool = False) -> CssSummary:
        try:
            c = make_curve(q, m)
            C1, C2 = CodeService.nested_pair(c, a, b)
            params, pair = expand.expanded_css(C1, C2, p=c.p)
            summary = CssSummary(params=params)
            if include_matrices:
                summary.hx = _ints(pair.hx)
                summary.hz = _ints(pair.hz)
            return summary
        except AGCodesError as e:
            logger.error(f"Expanded CSS construction failed: {str(e)}")
            raise
