import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from app.algebra import agcode, asymptotics, css, expand, minweight
from app.algebra.curve import INFINITY, Divisor, make_curve
from app.algebra.fflinalg import kernel, rank, rowspace_contains, same_rowspace
from app.algebra.gf import dual_basis, embed, frobenius, make_field, relative_trace
from app.algebra.riemann_roch import local_expansion, riemann_roch_basis
from app.core.config import settings
from app.core.errors import AGCodesError, InvariantViolation, ParameterRangeError
from app.models.check_result import CheckResult

logger = logging.getLogger(__name__)

Outcome = Tuple[bool, Optional[str]]

CURVES = [(3, 2), (3, 4), (4, 5), (5, 2), (5, 3)]


def _seed(rng: np.random.Generator) -> int:
    return int(rng.integers(2**31))


def _check(suite: str, invariant: str, trial: Callable[[], Outcome], trials: int = 1) -> CheckResult:
    failures = []
    for i in range(trials):
        try:
            passed, detail = trial()
        except InvariantViolation as e:
            passed, detail = False, f"{e.invariant}: {e.detail}"
        except AGCodesError as e:
            passed, detail = False, str(e)
        if not passed:
            failures.append(f"trial {i + 1}: {detail}")
    if failures:
        logger.warning("%s/%s failed: %s", suite, invariant, failures[0])
    return CheckResult(
        suite=suite,
        invariant=invariant,
        passed=not failures,
        trials=trials,
        detail="; ".join(failures) or None,
    )


def _gf_suite(rng: np.random.Generator) -> List[CheckResult]:
    fields = [make_field(p, k) for p, k in [(2, 4), (3, 2), (3, 4), (5, 2), (7, 2)]]

    def group_order() -> Outcome:
        F = fields[int(rng.integers(len(fields)))]
        e = F.random(8, seed=_seed(rng))
        e = e[e != 0]
        return bool(np.all(e ** (F.order - 1) == 1)), f"{F}"

    def frobenius_cycle() -> Outcome:
        F = fields[int(rng.integers(len(fields)))]
        a = F.random(8, seed=_seed(rng))
        return bool(np.all(frobenius(a, F.k) == a)), f"{F}"

    def trace_in_subfield() -> Outcome:
        F = make_field(3, 4)
        t = relative_trace(F.random(8, seed=_seed(rng)), 2)
        return bool(np.all(frobenius(t, 2) == t)), None

    def dual_pairing() -> Outcome:
        F = fields[int(rng.integers(len(fields)))]
        basis = F.ordered_elements()[1:][rng.permutation(F.order - 1)[: F.k]]
        try:
            dual = dual_basis(basis)
        except AGCodesError:
            return True, None
        pairing = relative_trace(basis.reshape(-1, 1) * dual.reshape(1, -1), 1)
        return bool(np.all(pairing == F.GF.Identity(F.k))), f"{F}"

    def embedding_homomorphism() -> Outcome:
        small, big = make_field(3, 2), make_field(3, 4)
        a, b = small.random(6, seed=_seed(rng)), small.random(6, seed=_seed(rng))
        ok = np.all(embed(a * b, big) == embed(a, big) * embed(b, big))
        ok = ok and np.all(embed(a + b, big) == embed(a, big) + embed(b, big))
        return bool(ok), None

    return [
        _check("gf", "group-order", group_order, 10),
        _check("gf", "frobenius-cycle", frobenius_cycle, 10),
        _check("gf", "relative-trace", trace_in_subfield, 5),
        _check("gf", "dual-basis", dual_pairing, 10),
        _check("gf", "embedding", embedding_homomorphism, 5),
    ]


def _fflinalg_suite(rng: np.random.Generator) -> List[CheckResult]:
    F = make_field(3, 2)

    def rank_nullity() -> Outcome:
        rows, cols = int(rng.integers(1, 7)), int(rng.integers(1, 9))
        M = F.random((rows, cols), seed=_seed(rng))
        K = kernel(M)
        ok = rank(M) + K.shape[0] == cols and not np.any((M @ K.T).view(np.ndarray))
        return bool(ok), f"{rows}x{cols}"

    def containment() -> Outcome:
        M = F.random((4, 7), seed=_seed(rng))
        combo = F.random((3, 4), seed=_seed(rng)) @ M
        return rowspace_contains(combo, M), None

    return [
        _check("fflinalg", "rank-nullity", rank_nullity, 20),
        _check("fflinalg", "rowspace-containment", containment, 10),
    ]


def _curve_suite(rng: np.random.Generator) -> List[CheckResult]:
    def place_count(q: int, m: int) -> Callable[[], Outcome]:
        def trial() -> Outcome:
            c = make_curve(q, m)
            points = [c.coordinates(P) for P in c.affine_places]
            on_curve = all(c.contains_point(x, y) for x, y in points)
            return len(c.rational_places) == c.place_count and on_curve, repr(c)

        return trial

    def degree_two() -> Outcome:
        c = make_curve(5, 2)
        P = c.degree_two_place
        ok = all(c.contains_point(x, y) for x, y in c.geometric_points(P)) and not P.is_rational
        return ok, str(P)

    return [_check("curve", f"place-count({q},{m})", place_count(q, m)) for q, m in CURVES] + [
        _check("curve", "degree-2-place", degree_two)
    ]


def _random_divisor(rng: np.random.Generator, c, extra: int, degree_two: bool = False) -> Divisor:
    """Effective divisor of degree 2g - 1 + extra on one to four random rational places."""
    target = 2 * c.genus - 1 + extra
    coefficients = {}
    if degree_two:
        t = int(rng.integers(1, min(2, target // 2) + 1))
        coefficients[c.degree_two_place] = t
        target -= 2 * t
    places = c.rational_places
    chosen = rng.choice(len(places), size=int(rng.integers(1, 5)), replace=False)
    cuts = np.sort(rng.integers(0, target + 1, size=chosen.size - 1))
    for i, a in zip(chosen, np.diff(np.concatenate([[0], cuts, [target]]))):
        coefficients[places[int(i)]] = int(a)
    return Divisor(coefficients)


def _riemann_roch_suite(rng: np.random.Generator) -> List[CheckResult]:
    def dimension_law(q: int, m: int) -> Callable[[], Outcome]:
        c = make_curve(q, m)

        def trial() -> Outcome:
            degree_two = (q, m) == (5, 2) and rng.random() < 0.1
            G = _random_divisor(rng, c, int(rng.integers(0, 6)), degree_two)
            basis = riemann_roch_basis(c, G)
            return basis.dimension == G.degree + 1 - c.genus, f"l({G}) = {basis.dimension} on {c}"

        return trial

    def expansion_residual() -> Outcome:
        c = make_curve(3, 4)
        P = c.affine_places[int(rng.integers(len(c.affine_places)))]
        expansion = local_expansion(c, P, 12)
        return not np.any(expansion.residual(c).view(np.ndarray)), str(P)

    return [
        _check("riemann_roch", f"dimension-law({q},{m})", dimension_law(q, m), 200) for q, m in CURVES
    ] + [_check("riemann_roch", "local-expansion", expansion_residual, 5)]


def _agcode_suite(rng: np.random.Generator) -> List[CheckResult]:
    def duality() -> Outcome:
        q, m = CURVES[int(rng.integers(len(CURVES)))]
        c = make_curve(q, m)
        G = _random_divisor(rng, c, int(rng.integers(0, 4)))
        C = agcode.evaluation_code(c, G)
        dual = agcode.omega_code(C)
        orthogonal = not np.any((C.generator @ dual.generator.T).view(np.ndarray))
        involution = same_rowspace(agcode.dual_code(dual).generator, C.generator)
        ok = orthogonal and involution and dual.k == C.n + c.genus - 1 - G.degree
        return ok, f"{C.label()} from {G} on {c}"

    return [_check("agcode", "duality", duality, 50)]


def _css_suite(rng: np.random.Generator) -> List[CheckResult]:
    def formulas_agree() -> Outcome:
        q, m = CURVES[int(rng.integers(len(CURVES)))]
        c = make_curve(q, m)
        n = c.place_count - 1
        a = int(rng.integers(2 * c.genus - 1, n - 1))
        b = int(rng.integers(a, n))
        return css.t_point_params(c, [a], [b]) == css.closed_form_params(q, m, [a], [b]), f"({q},{m},{a},{b})"

    def explicit_build() -> Outcome:
        c = make_curve(3, 2)
        a = int(rng.integers(1, 7))
        b = int(rng.integers(a + 1, 15))
        params, pair = css.one_point_build(c, a, b)
        return params.k == b - a and pair.n == 15, params.label()

    return [
        _check("css", "closed-form-agreement", formulas_agree, 20),
        _check("css", "explicit-k", explicit_build, 5),
    ]


def _minweight_suite(rng: np.random.Generator) -> List[CheckResult]:
    fields = [make_field(2, 2), make_field(3, 1), make_field(3, 2)]

    def bz_matches_enumeration() -> Outcome:
        F = fields[int(rng.integers(len(fields)))]
        k, n = int(rng.integers(1, 4)), int(rng.integers(4, 9))
        C = agcode.linear_code(F.random((k, n), seed=_seed(rng)))
        exact = minweight.exhaustive_min_weight(C)
        lower, upper = minweight.bz_min_weight(C)
        return lower == upper == exact, f"{C.label()}: {lower}..{upper} vs {exact}"

    def coset_meets_bound() -> Outcome:
        # hermitian pairs keep k2 <= 5, so C2 has at most 9^5 codewords
        q, m = [(3, 2), (3, 4)][int(rng.integers(2))]
        c = make_curve(q, m)
        if m == 2:
            a = int(rng.integers(1, 4))
            b = int(rng.integers(a + 1, 5))
        else:
            a = int(rng.integers(3, 7))
            b = int(rng.integers(a + 1, 8))
        C1 = agcode.evaluation_code(c, Divisor.single(INFINITY, a), c.affine_places)
        C2 = agcode.evaluation_code(c, Divisor.single(INFINITY, b), c.affine_places)
        params, _ = css.css_assemble(C1, C2)
        d = minweight.coset_min_weight(C2, C1)
        floor = max(params.d_lb or 0, C2.n - b)
        return d >= floor, f"{c} a={a} b={b}: {d} vs {floor}"

    return [
        _check("minweight", "bz-vs-exhaustive", bz_matches_enumeration, 30),
        _check("minweight", "coset-designed-bound", coset_meets_bound, 6),
    ]


def _expand_suite(rng: np.random.Generator) -> List[CheckResult]:
    def duality(p: int) -> Callable[[], Outcome]:
        F = make_field(p, 2)

        def trial() -> Outcome:
            k, n = int(rng.integers(1, 4)), int(rng.integers(4, 7))
            C = agcode.linear_code(F.random((k, n), seed=_seed(rng)))
            return expand.verify_expansion_duality(C), C.label()

        return trial

    return [
        _check("expand", "duality-F9", duality(3), 20),
        _check("expand", "duality-F25", duality(5), 10),
    ]


def _asymptotics_suite(rng: np.random.Generator) -> List[CheckResult]:
    def ratio_converges(q: int) -> Callable[[], Outcome]:
        def trial() -> Outcome:
            levels = asymptotics.gs_tower_metrics(q, 8)
            ratios = [level.ratio for level in levels if level.genus > 1]
            monotone = all(x > y for x, y in zip(ratios, ratios[1:]))
            close = abs(ratios[-1] - (q - 1)) <= Fraction(5, 100) * (q - 1)
            return monotone and close, f"q={q}: {float(ratios[-1]):.4f}"

        return trial

    def feasibility() -> Outcome:
        q = [5, 7, 8][int(rng.integers(3))]
        window = asymptotics.positive_rate_window(q)
        c = window * Fraction(int(rng.integers(1, 100)), 100)
        t = int(rng.integers(1, 4))
        for level in asymptotics.gs_tower_metrics(q, 10):
            s = asymptotics.t_point_schedule(level, c, t)
            if not (s.rate > 0 and s.relative_distance > 0 and 0 < s.K <= s.places - 2 * s.genus - t):
                return False, f"q={q} c={c} t={t} level {level.index}"
        return True, None

    return [_check("asymptotics", f"ratio-limit(q={q})", ratio_converges(q)) for q in (5, 7, 8)] + [
        _check("asymptotics", "schedule-feasibility", feasibility, 10)
    ]


SUITES: Dict[str, Callable[[np.random.Generator], List[CheckResult]]] = {
    "gf": _gf_suite,
    "fflinalg": _fflinalg_suite,
    "curve": _curve_suite,
    "riemann_roch": _riemann_roch_suite,
    "agcode": _agcode_suite,
    "css": _css_suite,
    "minweight": _minweight_suite,
    "expand": _expand_suite,
    "asymptotics": _asymptotics_suite,
}


class VerifyService:
    @staticmethod
    def run(suites: Optional[Sequence[str]] = None, seed: int = 0) -> List[CheckResult]:
        """
        Runs the invariant suites of the algebra modules.

        Args:
            suites (Optional[Sequence[str]]): Names from SUITES; all of them by default.
            seed (int): Seed of the random trials, so reruns are identical.

        Returns:
            List[CheckResult]: One result per invariant.
        """

        names = list(SUITES) if not suites else list(suites)
        unknown = [name for name in names if name not in SUITES]
        if unknown:
            raise ParameterRangeError(f"unknown suites {unknown}; choose from {list(SUITES)}")

        rng = np.random.default_rng(seed)
        if settings.SHOW_PROGRESS:
            names = tqdm(names, desc="verify", leave=False)
        results = []
        for name in names:
            logger.info("running %s suite", name)
            results.extend(SUITES[name](rng))
        return results
