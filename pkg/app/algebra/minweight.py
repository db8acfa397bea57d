"""
Minimum-weight certification.

Codewords are produced in batches as (message matrix) @ (generator) with
galois's lookup-table arithmetic, and only messages whose first nonzero entry
is 1 are enumerated since scaling preserves weight and every filter used here.
Batches are spread over a thread pool with a bounded number in flight.
Enumeration stops once the running minimum meets a known lower bound, and
the result then equals that bound, so it does not depend on the number of
workers.
"""

import itertools
import logging
import math
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from typing import Callable, Iterable, Iterator, List, Optional, Tuple, Union

import numpy as np
from tqdm import tqdm

from app.algebra.agcode import LinearCode, dual_code
from app.algebra.fflinalg import Matrix, kernel, rref, rowspace_contains
from app.core.config import settings
from app.core.errors import BudgetExceededError, CodeConstructionError

logger = logging.getLogger(__name__)

INFINITY = math.inf

Weight = Union[int, float]
CodewordFilter = Callable[[Matrix], np.ndarray]


def _digits(indices: np.ndarray, base: int, width: int) -> np.ndarray:
    """Base-``base`` digits of each index, most significant first."""
    out = np.empty((indices.size, width), dtype=np.int64)
    rest = indices.copy()
    for col in range(width - 1, -1, -1):
        rest, out[:, col] = np.divmod(rest, base)
    return out


def _projective_messages(q: int, k: int, chunk: int) -> Iterator[np.ndarray]:
    """All nonzero messages of length k with first nonzero entry 1, in chunks."""
    for lead in range(k):
        tail = k - lead - 1
        total = q**tail
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            block = np.zeros((idx.size, k), dtype=np.int64)
            block[:, lead] = 1
            if tail:
                block[:, lead + 1 :] = _digits(idx, q, tail)
            yield block


def _weight_messages(q: int, k: int, w: int, chunk: int) -> Iterator[np.ndarray]:
    """Messages of Hamming weight exactly w with first nonzero entry 1, in chunks."""
    if w == 0:
        return
    count = (q - 1) ** (w - 1)
    tails = np.array(list(itertools.product(range(1, q), repeat=w - 1)), dtype=np.int64)
    scalars = np.hstack([np.ones((count, 1), dtype=np.int64), tails.reshape(count, w - 1)])
    pending: List[np.ndarray] = []
    size = 0
    for positions in itertools.combinations(range(k), w):
        block = np.zeros((count, k), dtype=np.int64)
        block[:, list(positions)] = scalars
        pending.append(block)
        size += block.shape[0]
        if size >= chunk:
            yield np.vstack(pending)
            pending, size = [], 0
    if pending:
        yield np.vstack(pending)


def _weight_message_count(q: int, k: int, w: int) -> int:
    return math.comb(k, w) * (q - 1) ** (w - 1) if w else 0


def _batch_minimum(G: Matrix, messages: np.ndarray, accept: Optional[CodewordFilter]) -> Weight:
    codewords = type(G)(messages) @ G
    weights = np.count_nonzero(codewords.view(np.ndarray), axis=1)
    if accept is not None:
        weights = weights[accept(codewords)]
    return int(weights.min()) if weights.size else INFINITY


def _minimum_over(
    G: Matrix,
    batches: Iterable[np.ndarray],
    accept: Optional[CodewordFilter],
    workers: int,
    total: Optional[int] = None,
    desc: str = "codewords",
    stop_at: Weight = 1,
) -> Weight:
    """
    Running minimum of accepted codeword weights over the batches.

    Batches are drawn lazily; at most 2 * workers are in flight at once.
    Enumeration stops as soon as the minimum reaches ``stop_at``, a weight
    already known to be a lower bound.
    """

    if settings.SHOW_PROGRESS:
        batches = tqdm(batches, desc=desc, total=total, leave=False)
    batches = iter(batches)
    best: Weight = INFINITY
    if workers <= 1:
        for messages in batches:
            best = min(best, _batch_minimum(G, messages, accept))
            if best <= stop_at:
                break
        return best

    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending = {
            pool.submit(_batch_minimum, G, messages, accept)
            for messages in itertools.islice(batches, 2 * workers)
        }
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            best = min([best] + [future.result() for future in done])
            if best <= stop_at:
                for future in pending:
                    future.cancel()
                break
            pending |= {
                pool.submit(_batch_minimum, G, messages, accept)
                for messages in itertools.islice(batches, len(done))
            }
    return best


def _not_in(generator: Matrix) -> CodewordFilter:
    """Filter keeping codewords outside the row space of ``generator``."""
    checks = kernel(generator)
    if checks.shape[0] == 0:
        return lambda codewords: np.zeros(codewords.shape[0], dtype=bool)
    return lambda codewords: np.any((codewords @ checks.T).view(np.ndarray), axis=1)


def exhaustive_min_weight(
    C: LinearCode,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
    accept: Optional[CodewordFilter] = None,
) -> Weight:
    """
    Minimum weight of a nonzero (accepted) codeword by full enumeration.

    Args:
        C (LinearCode): The code.
        budget (Optional[int]): Upper limit on q^k; defaults to EXHAUSTIVE_BUDGET.
        workers (Optional[int]): Thread count; defaults to MINWEIGHT_WORKERS.
        accept (Optional[CodewordFilter]): Keeps only codewords for which it is true.

    Returns:
        Weight: The minimum, or INFINITY when no codeword qualifies.

    Raises:
        BudgetExceededError: If q^k exceeds the budget.
    """

    budget = settings.EXHAUSTIVE_BUDGET if budget is None else budget
    workers = workers or settings.MINWEIGHT_WORKERS
    q, k = C.q, C.k
    if q**k > budget:
        raise BudgetExceededError(f"{q}^{k} codewords exceed the budget of {budget}; use search")
    if k == 0:
        return INFINITY

    chunk = settings.CHUNK_SIZE
    batches = _projective_messages(q, k, chunk)
    count = sum(-(-(q ** (k - lead - 1)) // chunk) for lead in range(k))
    d = _minimum_over(C.generator, batches, accept, workers, total=count, desc="enumerate")
    logger.debug("exhaustive minimum weight of %s: %s", C.label(), d)
    return d


def information_sets(G: Matrix) -> List[Tuple[Matrix, int]]:
    """
    Disjoint information sets of a full-rank k x n generator.

    Returns a list of (G_j, r_j): G_j is row-equivalent to G with an identity
    block of size r_j on the j-th set and zeros there in its last k - r_j rows.
    Full sets (r_j = k) come first.
    """

    k, n = G.shape
    remaining = list(range(n))
    sets = []
    while remaining:
        used = [col for col in range(n) if col not in set(remaining)]
        order = remaining + used
        R, r, pivots = rref(G[:, order])
        local = [p for p in pivots if p < len(remaining)]
        if not local:
            break
        inverse = np.argsort(order)
        sets.append((R[:, inverse], len(local)))
        chosen = {remaining[p] for p in local}
        remaining = [col for col in remaining if col not in chosen]
    return sets


def _bz_lower_bound(k: int, ranks: List[int], w: int) -> int:
    return sum(max(0, w + 1 - (k - r)) for r in ranks)


def bz_min_weight(
    C: LinearCode,
    budget: Optional[int] = None,
    accept: Optional[CodewordFilter] = None,
    workers: Optional[int] = None,
) -> Tuple[Weight, Weight]:
    """
    Brouwer-Zimmermann search over disjoint information sets.

    After all messages of weight <= w have been tried on every set, an
    (accepted) codeword not yet seen has weight at least
    sum_j max(0, w + 1 - (k - r_j)). The search stops when that bound meets
    the best weight found, or when the next weight level would exceed the budget.

    Args:
        C (LinearCode): The code.
        budget (Optional[int]): Codewords to evaluate at most; defaults to SEARCH_BUDGET.
        accept (Optional[CodewordFilter]): Restricts the minimum to accepted codewords.
        workers (Optional[int]): Thread count.

    Returns:
        Tuple[Weight, Weight]: (lower, upper); equal when the search completed.
        (INFINITY, INFINITY) when no codeword qualifies.
    """

    budget = settings.SEARCH_BUDGET if budget is None else budget
    workers = workers or settings.MINWEIGHT_WORKERS
    q, k = C.q, C.k
    if k == 0:
        return INFINITY, INFINITY

    sets = information_sets(C.generator)
    ranks = [r for _, r in sets]
    upper: Weight = INFINITY
    lower = max(1, _bz_lower_bound(k, ranks, 0))
    evaluated = 0

    for w in range(1, k + 1):
        level = _weight_message_count(q, k, w) * len(sets)
        if evaluated + level > budget:
            logger.warning(
                "search budget of %d codewords reached at weight %d for %s", budget, w, C.label()
            )
            return min(lower, upper), upper
        for G_j, _ in sets:
            found = _minimum_over(
                G_j,
                _weight_messages(q, k, w, settings.CHUNK_SIZE),
                accept,
                workers,
                desc=f"w={w}",
                stop_at=lower,
            )
            upper = min(upper, found)
            if upper <= lower:
                logger.debug("weight %d reached the lower bound %s early", w, lower)
                return upper, upper
        evaluated += level

        # every message of the first (full) set has been tried
        if w == k:
            return upper, upper
        lower = max(lower, _bz_lower_bound(k, ranks, w))
        logger.debug("weight %d done: %s <= d <= %s (%d codewords)", w, lower, upper, evaluated)
        if lower >= upper:
            return upper, upper
    return upper, upper


def coset_min_weight(
    C2: LinearCode, C1: LinearCode, budget: Optional[int] = None, workers: Optional[int] = None
) -> Weight:
    """
    Minimum weight over C2 minus C1 by enumerating C2.

    Raises:
        CodeConstructionError: If C1 is not contained in C2.
        BudgetExceededError: If q^{k2} exceeds the budget.
    """

    if not rowspace_contains(C1.generator, C2.generator):
        raise CodeConstructionError("C1 ⊄ C2")
    return exhaustive_min_weight(C2, budget=budget, workers=workers, accept=_not_in(C1.generator))


def css_min_distance(
    C1: LinearCode,
    C2: LinearCode,
    budget: Optional[int] = None,
    exhaustive_budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> Tuple[Weight, Weight]:
    """
    Brackets min wt over (C2 minus C1) together with (C1^perp minus C2^perp).

    The first side is enumerated when q^{k2} fits the exhaustive budget and
    searched otherwise; the second side is always an information-set search
    on C1^perp filtered against C2^perp.

    Returns:
        Tuple[Weight, Weight]: (lower, upper) on the CSS distance.
    """

    exhaustive_budget = settings.EXHAUSTIVE_BUDGET if exhaustive_budget is None else exhaustive_budget
    if not rowspace_contains(C1.generator, C2.generator):
        raise CodeConstructionError("C1 ⊄ C2")

    if C2.q**C2.k <= exhaustive_budget:
        d = coset_min_weight(C2, C1, budget=exhaustive_budget, workers=workers)
        x_side = (d, d)
    else:
        x_side = bz_min_weight(C2, budget=budget, accept=_not_in(C1.generator), workers=workers)

    dual_of_c1 = dual_code(C1)
    z_side = bz_min_weight(
        dual_of_c1, budget=budget, accept=_not_in(kernel(C2.generator)), workers=workers
    )
    lower, upper = min(x_side[0], z_side[0]), min(x_side[1], z_side[1])
    logger.info("CSS distance: %s <= d <= %s", lower, upper)
    return lower, upper
