"""
Exact arithmetic for F_q and its quadratic extension F_{q^2}.

The base field F_q is a galois field class (prime fields, or F_p[x] modulo a
fixed irreducible polynomial for q = p^e) whose addition, multiplication,
negation and inversion are materialized once as lookup tables. The extension
F_{q^2} is presented by an element omega with irreducible minimal polynomial
x^2 + c1*x + c0; its elements are coordinate pairs (a, b) meaning a + b*omega
in the fixed basis {1, omega}.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, List, Optional, Tuple

import galois
import numpy as np

from addequiv.config import get_settings
from addequiv.utils.errors import AddEquivError

logger = logging.getLogger(__name__)


class FieldError(AddEquivError):
    """Base class for field construction and arithmetic errors."""
    pass


class NotPrimePower(FieldError):
    """Raised when the requested field order is not a prime power."""
    pass


class FieldOrderTooLarge(FieldError):
    """Raised when q exceeds the configured MAX_FIELD_ORDER."""
    pass


class ZeroConstantTerm(FieldError):
    """Raised when c0 = 0, which makes x^2 + c1*x + c0 divisible by x."""
    pass


class ReduciblePolynomial(FieldError):
    """Raised when x^2 + c1*x + c0 has a root in F_q."""
    pass


class FieldMismatch(FieldError):
    """Raised when elements of two different field specs are combined."""
    pass


class InvalidFieldElement(FieldError):
    """Raised when an integer does not encode an element of F_q."""
    pass


@dataclass(frozen=True)
class FieldTables:
    """Lookup tables for F_q arithmetic, indexed by the integer encoding."""
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is unused and stored as 0


@lru_cache(maxsize=None)
def _base_field(q: int, modulus: Optional[int]) -> type:
    if modulus is None:
        return galois.GF(q)
    return galois.GF(q, irreducible_poly=modulus)


@lru_cache(maxsize=None)
def _base_tables(q: int, modulus: Optional[int]) -> FieldTables:
    GF = _base_field(q, modulus)
    els = GF.elements
    add = (els[:, None] + els[None, :]).view(np.ndarray).astype(np.uint8)
    mul = (els[:, None] * els[None, :]).view(np.ndarray).astype(np.uint8)
    neg = (-els).view(np.ndarray).astype(np.uint8)
    inv = np.zeros(q, dtype=np.uint8)
    inv[1:] = (GF(1) / els[1:]).view(np.ndarray).astype(np.uint8)
    for table in (add, mul, neg, inv):
        table.setflags(write=False)
    return FieldTables(add=add, mul=mul, neg=neg, inv=inv)


@dataclass(frozen=True)
class FieldSpec:
    """
    The pair (F_q, F_{q^2}) with omega of minimal polynomial x^2 + c1*x + c0.

    Elements of F_q are the integers 0..q-1 in galois' integer encoding (for
    q = p^e the base-p digits of an integer are the polynomial coefficients,
    digit i being the coefficient of x^i).
    """
    q: int
    c0: int
    c1: int
    modulus: Optional[int] = None  # integer encoding of the F_q modulus; None for prime q
    GF: type = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.GF is None:
            object.__setattr__(self, 'GF', _base_field(self.q, self.modulus))

    @property
    def characteristic(self) -> int:
        return self.GF.characteristic

    @property
    def degree(self) -> int:
        return self.GF.degree

    @property
    def tables(self) -> FieldTables:
        return _base_tables(self.q, self.modulus)

    # -- F_q scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.tables.add[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.tables.add[a, self.tables.neg[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.tables.mul[a, b])

    def neg(self, a: int) -> int:
        return int(self.tables.neg[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return int(self.tables.inv[a])

    def check_element(self, a: int) -> int:
        """Return a as int if it encodes an element of F_q, else raise."""
        value = int(a)
        if not 0 <= value < self.q:
            raise InvalidFieldElement(f"{a} is not an element of F_{self.q}")
        return value

    # -- F_{q^2} structure -----------------------------------------------------

    @cached_property
    def companion(self) -> np.ndarray:
        """The companion matrix [[0, 1], [-c0, -c1]] of omega over F_q."""
        m = np.array(
            [[0, 1], [self.neg(self.c0), self.neg(self.c1)]], dtype=np.uint8
        )
        m.setflags(write=False)
        return m

    @property
    def zero(self) -> "ExtElem":
        return ExtElem(0, 0, self)

    @property
    def one(self) -> "ExtElem":
        return ExtElem(1, 0, self)

    @property
    def omega(self) -> "ExtElem":
        return ExtElem(0, 1, self)

    @cached_property
    def omega_powers(self) -> List["ExtElem"]:
        """omega^0, omega^1, ... up to (excluding) the order of omega."""
        powers = [self.one]
        current = self.omega
        while current != self.one:
            powers.append(current)
            current = ext_mul(current, self.omega)
        return powers

    @property
    def omega_order(self) -> int:
        """Multiplicative order of omega (q^2 - 1 exactly when omega is primitive)."""
        return len(self.omega_powers)

    @property
    def is_primitive(self) -> bool:
        return self.omega_order == self.q * self.q - 1

    @cached_property
    def omega_log(self) -> Dict[Tuple[int, int], int]:
        """Discrete logarithm base omega of every element reachable as a power."""
        return {(z.a, z.b): i for i, z in enumerate(self.omega_powers)}

    @cached_property
    def conjugate_gap(self) -> "ExtElem":
        """omega^q - omega, the denominator of the alternating form."""
        return ext_sub(frobenius(self.omega), self.omega)

    def elements(self) -> List["ExtElem"]:
        """All q^2 elements of F_{q^2}, ordered by (b, a)."""
        return [ExtElem(a, b, self) for b in range(self.q) for a in range(self.q)]

    def header(self) -> str:
        """Text header `q=<int> c0=<int> c1=<int>` (plus modulus for non-prime q)."""
        text = f"q={self.q} c0={self.c0} c1={self.c1}"
        if self.modulus is not None:
            text += f" modulus={self.modulus}"
        return text


@dataclass(frozen=True)
class ExtElem:
    """The element a + b*omega of F_{q^2}."""
    a: int
    b: int
    spec: FieldSpec = field(repr=False)

    def __post_init__(self):
        self.spec.check_element(self.a)
        self.spec.check_element(self.b)

    def __add__(self, other: "ExtElem") -> "ExtElem":
        return ext_add(self, other)

    def __sub__(self, other: "ExtElem") -> "ExtElem":
        return ext_sub(self, other)

    def __mul__(self, other: "ExtElem") -> "ExtElem":
        return ext_mul(self, other)

    def __neg__(self) -> "ExtElem":
        return ext_neg(self)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0


def make_field_spec(q: int, c0: int, c1: int, modulus: Optional[int] = None) -> FieldSpec:
    """
    Build and validate a FieldSpec.

    Args:
        q: Order of the base field, a prime power not above MAX_FIELD_ORDER
        c0, c1: Coefficients of the minimal polynomial x^2 + c1*x + c0 of omega
        modulus: Integer encoding of the irreducible polynomial defining F_q
                 when q is not prime (galois' default polynomial if omitted)

    Returns:
        Validated FieldSpec

    Raises:
        NotPrimePower, FieldOrderTooLarge, InvalidFieldElement,
        ZeroConstantTerm, ReduciblePolynomial
    """
    q = int(q)
    if q < 2 or not galois.is_prime_power(q):
        raise NotPrimePower(f"{q} is not a prime power")
    max_order = get_settings().MAX_FIELD_ORDER
    if q > max_order:
        raise FieldOrderTooLarge(
            f"q={q} exceeds the configured bound MAX_FIELD_ORDER={max_order}"
        )

    if galois.is_prime(q):
        modulus = None
    GF = _base_field(q, None if modulus is None else int(modulus))
    if modulus is None and not galois.is_prime(q):
        modulus = int(GF.irreducible_poly)

    spec = FieldSpec(q=q, c0=int(c0), c1=int(c1), modulus=modulus, GF=GF)
    spec.check_element(spec.c0)
    spec.check_element(spec.c1)
    if spec.c0 == 0:
        raise ZeroConstantTerm(
            f"x^2 + {spec.c1}x has the root 0 in F_{q}; c0 must be nonzero"
        )

    els = GF.elements
    values = els * els + GF(spec.c1) * els + GF(spec.c0)
    roots = np.flatnonzero(values.view(np.ndarray) == 0)
    if roots.size:
        raise ReduciblePolynomial(
            f"x^2 + {spec.c1}x + {spec.c0} has the root {int(roots[0])} in F_{q}"
        )

    if not spec.is_primitive:
        logger.info(
            f"omega has order {spec.omega_order} < {q * q - 1}; "
            f"omega-power tokens are unavailable for this field"
        )
    return spec


def _check_same(z: ExtElem, w: ExtElem, spec: Optional[FieldSpec]) -> FieldSpec:
    if z.spec != w.spec or (spec is not None and spec != z.spec):
        raise FieldMismatch("elements belong to different field specs")
    return z.spec


def ext_add(z: ExtElem, w: ExtElem, spec: Optional[FieldSpec] = None) -> ExtElem:
    s = _check_same(z, w, spec)
    return ExtElem(s.add(z.a, w.a), s.add(z.b, w.b), s)


def ext_sub(z: ExtElem, w: ExtElem, spec: Optional[FieldSpec] = None) -> ExtElem:
    s = _check_same(z, w, spec)
    return ExtElem(s.sub(z.a, w.a), s.sub(z.b, w.b), s)


def ext_neg(z: ExtElem) -> ExtElem:
    s = z.spec
    return ExtElem(s.neg(z.a), s.neg(z.b), s)


def ext_mul(z: ExtElem, w: ExtElem, spec: Optional[FieldSpec] = None) -> ExtElem:
    """
    Multiply in F_{q^2}: (a + b*w)(c + d*w) reduced by w^2 = -c1*w - c0.

    Raises:
        FieldMismatch: if the operands (or the explicit spec) disagree
    """
    s = _check_same(z, w, spec)
    bd = s.mul(z.b, w.b)
    real = s.sub(s.mul(z.a, w.a), s.mul(s.c0, bd))
    imag = s.sub(s.add(s.mul(z.a, w.b), s.mul(z.b, w.a)), s.mul(s.c1, bd))
    return ExtElem(real, imag, s)


def ext_scale(c: int, z: ExtElem) -> ExtElem:
    """Multiply z by the base-field scalar c."""
    s = z.spec
    return ExtElem(s.mul(c, z.a), s.mul(c, z.b), s)


def ext_pow(z: ExtElem, exponent: int) -> ExtElem:
    """Square-and-multiply power; negative exponents go through the inverse."""
    if exponent < 0:
        return ext_pow(ext_inv(z), -exponent)
    result = z.spec.one
    base = z
    while exponent:
        if exponent & 1:
            result = ext_mul(result, base)
        base = ext_mul(base, base)
        exponent >>= 1
    return result


def ext_inv(z: ExtElem) -> ExtElem:
    if z.is_zero():
        raise ZeroDivisionError("0 has no inverse in F_{q^2}")
    q = z.spec.q
    return ext_pow(z, q * q - 2)


def frobenius(z: ExtElem) -> ExtElem:
    """
    The q-power map z -> z^q.

    omega^q is the other root of x^2 + c1*x + c0, namely -c1 - omega, so
    (a + b*omega)^q = (a - c1*b) - b*omega.
    """
    s = z.spec
    return ExtElem(s.sub(z.a, s.mul(s.c1, z.b)), s.neg(z.b), s)


def regular_repr(z: ExtElem, spec: Optional[FieldSpec] = None) -> np.ndarray:
    """
    The 2x2 matrix a*I + b*M_omega of multiplication by z.

    Acting on row vectors (x, y) of coordinates in the basis {1, omega}.
    """
    s = spec or z.spec
    if s != z.spec:
        raise FieldMismatch("element does not belong to the given field spec")
    m = s.companion
    t = s.tables
    scaled = t.mul[z.b, m]
    diag = np.array([[z.a, 0], [0, z.a]], dtype=np.uint8)
    return t.add[diag, scaled]


def elem_from_power(spec: FieldSpec, exponent: int) -> ExtElem:
    """omega^exponent (reduced modulo the order of omega)."""
    powers = spec.omega_powers
    return powers[exponent % len(powers)]
