"""
Finite fields F_p and F_{p^k} on top of galois FieldArrays.

A ``Field`` fixes the polynomial basis (the lexicographically first monic
irreducible modulus, coefficients compared low degree first) so element
serialisations are reproducible. Elements are galois FieldArrays; the array
class identifies the field, and arithmetic between different fields is an
error rather than a coercion.
"""

import functools
import itertools
import logging
import operator
from typing import Dict, Sequence, Tuple

import galois
import numpy as np

from app.core.config import settings
from app.core.errors import FieldError, InvariantViolation

logger = logging.getLogger(__name__)

FieldElement = galois.FieldArray

_REGISTRY: Dict[type, "Field"] = {}

_OPERATIONS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> Tuple[int, int]:
    """
    Splits a prime power into its characteristic and exponent.

    Args:
        q (int): The prime power.

    Returns:
        Tuple[int, int]: (p, r) with q = p^r.

    Raises:
        FieldError: If q is not a prime power.
    """

    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    r, rest = 0, q
    while rest % p == 0:
        rest //= p
        r += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, r


class Field:
    """F_{p^k} with a fixed modulus, wrapping the matching galois field class."""

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        self.p = p
        self.k = k
        self.modulus = tuple(int(c) for c in modulus)
        self.order = p**k
        if k == 1:
            self.GF = galois.GF(p)
        else:
            poly = galois.Poly(list(reversed(self.modulus)), field=galois.GF(p))
            self.GF = galois.GF(self.order, irreducible_poly=poly)
        _REGISTRY[self.GF] = self

    def __repr__(self) -> str:
        return f"F_{self.order}"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.k, self.modulus) == (
            other.p,
            other.k,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    @property
    def prime_field(self) -> "Field":
        return make_field(self.p, 1)

    @property
    def zero(self) -> FieldElement:
        return self.GF(0)

    @property
    def one(self) -> FieldElement:
        return self.GF(1)

    @property
    def generator(self) -> FieldElement:
        """The class of x modulo the modulus (0 for a prime field, whose modulus is x)."""
        return self.GF(self.p if self.k > 1 else 0)

    def contains(self, a) -> bool:
        return isinstance(a, galois.FieldArray) and type(a) is self.GF

    def element(self, coefficients: Sequence[int]) -> FieldElement:
        if len(coefficients) > self.k:
            raise FieldError(f"{len(coefficients)} coefficients given for {self}")
        value = sum((int(c) % self.p) * self.p**i for i, c in enumerate(coefficients))
        return self.GF(value)

    def coefficients(self, a) -> Tuple[int, ...]:
        value = int(a)
        digits = []
        for _ in range(self.k):
            value, digit = divmod(value, self.p)
            digits.append(digit)
        return tuple(digits)

    def key(self, a) -> Tuple[int, ...]:
        """Sort key: the coefficient sequence, low degree first."""
        return self.coefficients(a)

    def format(self, a) -> str:
        return ",".join(str(c) for c in self.coefficients(a))

    def parse(self, text: str) -> FieldElement:
        try:
            return self.element([int(part) for part in text.split(",")])
        except ValueError as e:
            raise FieldError(f"cannot parse '{text}' as an element of {self}: {e}")

    @functools.cached_property
    def _ordered_ints(self) -> np.ndarray:
        values = np.arange(self.order)
        digits = [(values // self.p**i) % self.p for i in range(self.k)]
        return values[np.lexsort(digits[::-1])]

    def ordered_elements(self) -> FieldElement:
        """All elements in coefficient-sequence order."""
        return self.GF(self._ordered_ints)

    def random(self, shape, seed=None) -> FieldElement:
        return self.GF.Random(shape, seed=seed)


def field_of(a) -> Field:
    if not isinstance(a, galois.FieldArray):
        raise FieldError(f"{type(a).__name__} is not a field element")
    try:
        return _REGISTRY[type(a)]
    except KeyError:
        raise FieldError(f"{type(a).__name__} was not built by make_field")


def _first_irreducible(p: int, k: int) -> Tuple[int, ...]:
    if k == 1:
        return (0, 1)
    prime = galois.GF(p)
    for low in itertools.product(range(p), repeat=k):
        if low[0] == 0:
            continue
        if galois.Poly([1, *reversed(low)], field=prime).is_irreducible():
            return (*low, 1)
    raise FieldError(f"no irreducible polynomial of degree {k} over F_{p}")


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> Field:
    """
    Builds F_{p^k} with the lexicographically first monic irreducible modulus.

    Args:
        p (int): The characteristic.
        k (int): The extension degree.

    Returns:
        Field: The field; repeated calls return the same instance.

    Raises:
        FieldError: If p is not prime, k < 1, or p^k reaches FIELD_ORDER_LIMIT.
    """

    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError(f"extension degree must be positive, got {k}")
    if p**k >= settings.FIELD_ORDER_LIMIT:
        raise FieldError(f"field too large: {p}^{k}")

    field = Field(p, k, _first_irreducible(p, k))
    x = field.generator
    if x ** field.order != x:
        raise InvariantViolation("fermat", f"x^{field.order} != x in {field}")
    logger.debug("built %s with modulus %s", field, field.modulus)
    return field


def _check_same_field(a, b) -> None:
    if not (isinstance(a, galois.FieldArray) and isinstance(b, galois.FieldArray)):
        raise FieldError("operands must be field elements")
    if type(a) is not type(b):
        raise FieldError(f"mixed fields: {type(a).__name__} and {type(b).__name__}")


def arith(a, b, op: str) -> FieldElement:
    _check_same_field(a, b)
    if op not in _OPERATIONS:
        raise FieldError(f"unknown operation '{op}'")
    if op == "div" and np.any(b == 0):
        raise FieldError("division by zero")
    return _OPERATIONS[op](a, b)


def frobenius(a, i: int = 1) -> FieldElement:
    """a^{p^i}; the exponent is reduced modulo the extension degree."""
    field = field_of(a)
    if i < 0:
        raise FieldError("frobenius power must be non-negative")
    return a ** (field.p ** (i % field.k))


def relative_trace(a, sub_degree: int) -> FieldElement:
    """
    Trace from F_{p^k} down to F_{p^sub_degree}.

    Args:
        a (FieldElement): Element (or array) of F_{p^k}.
        sub_degree (int): Degree of the subfield over F_p; must divide k.

    Returns:
        FieldElement: The sum of the conjugates a^{(p^s)^j}, still an array of
        F_{p^k} but fixed by frobenius(., sub_degree).
    """

    field = field_of(a)
    if sub_degree < 1 or field.k % sub_degree:
        raise FieldError(f"{sub_degree} does not divide {field.k}")
    step = field.p**sub_degree
    total, conjugate = a, a
    for _ in range(field.k // sub_degree - 1):
        conjugate = conjugate**step
        total = total + conjugate
    return total


def polynomial_basis(field: Field) -> FieldElement:
    """{1, w, ..., w^{k-1}} over F_p."""
    return field.GF([field.p**i for i in range(field.k)])


def dual_basis(basis) -> FieldElement:
    """
    Trace-dual basis over the prime field.

    Args:
        basis (FieldElement): 1-D array of k elements of F_{p^k}.

    Returns:
        FieldElement: b' with Tr(b_i * b'_j) = 1 if i == j else 0.

    Raises:
        FieldError: If the Gram matrix Tr(b_i * b_j) is singular.
    """

    field = field_of(basis)
    basis = basis.reshape(-1)
    if basis.size != field.k:
        raise FieldError(f"not a basis: {basis.size} elements for degree {field.k}")

    products = basis.reshape(-1, 1) * basis.reshape(1, -1)
    gram = field.prime_field.GF(relative_trace(products, 1).view(np.ndarray))
    if np.linalg.matrix_rank(gram) < field.k:
        raise FieldError("not a basis")
    inverse = field.GF(np.linalg.inv(gram).view(np.ndarray))
    return (inverse.T @ basis.reshape(-1, 1)).reshape(-1)


class Embedding:
    """
    Ring embedding F_{p^k} -> F_{p^{ks}}.

    The source generator goes to the smallest root (coefficient order) of the
    source modulus in the target. The map is tabulated over all source elements.
    """

    def __init__(self, source: Field, target: Field):
        if source.p != target.p or target.k % source.k:
            raise FieldError(f"{source} does not embed in {target}")
        self.source = source
        self.target = target

        if source.k == 1:
            self.root = target.one
            powers = target.GF([1])
        elif source == target:
            self.root = target.generator
            powers = polynomial_basis(target)
        else:
            modulus = galois.Poly(list(reversed(source.modulus)), field=target.GF)
            candidates = target.ordered_elements()
            roots = candidates[modulus(candidates) == 0]
            if roots.size == 0:
                raise FieldError(f"modulus of {source} has no root in {target}")
            self.root = roots[0]
            powers = target.GF([int(self.root**i) for i in range(source.k)])

        values = np.arange(source.order)
        digits = np.stack([(values // source.p**i) % source.p for i in range(source.k)], axis=1)
        image = target.GF(digits) @ powers.reshape(-1, 1)
        self.table = image.view(np.ndarray).reshape(-1).copy()
        self.inverse = np.full(target.order, -1, dtype=np.int64)
        self.inverse[self.table] = values

    def __call__(self, a) -> FieldElement:
        if not self.source.contains(a):
            raise FieldError(f"element is not in {self.source}")
        return self.target.GF(self.table[a.view(np.ndarray)])

    def contains(self, b) -> np.ndarray:
        """Mask of the entries of b lying in the image of the source field."""
        return self.inverse[b.view(np.ndarray)] >= 0

    def restrict(self, b) -> FieldElement:
        if not self.target.contains(b):
            raise FieldError(f"element is not in {self.target}")
        values = self.inverse[b.view(np.ndarray)]
        if np.any(values < 0):
            raise FieldError(f"element of {self.target} does not lie in {self.source}")
        return self.source.GF(values)


@functools.lru_cache(maxsize=None)
def embedding(source: Field, target: Field) -> Embedding:
    return Embedding(source, target)


def embed(a, target: Field) -> FieldElement:
    return embedding(field_of(a), target)(a)

