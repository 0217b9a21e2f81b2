"""
Quasi-cyclic construction of additive codes over F_4 and the extend /
augment / shorten transforms used to derive table entries.

A 1-generator quasi-cyclic binary code of index 2 is spanned by the n
simultaneous cyclic shifts of (g f0, g f1) in F_2[x]/(x^n - 1). Coordinate j
of the additive code takes its 1-part from the f0 half and its omega-part
from the f1 half: z_j = (g f0)_j + omega (g f1)_j.
"""
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence

import galois
import numpy as np

from addequiv.constants import EXTEND_BINARY_PARITY, EXTEND_CONVENTIONS, EXTEND_SUM
from addequiv.core.fieldcore import ExtElem, FieldSpec, ext_mul, make_field_spec
from addequiv.core.linalg import DimensionMismatch, GfMatrix, hstack, null_space, stack_rows
from addequiv.models.codes import AdditiveCode
from addequiv.services.addcode import is_acd, phi, stack_codes
from addequiv.utils.errors import AddEquivError

logger = logging.getLogger(__name__)

GF2 = galois.GF(2)


class QcError(AddEquivError):
    """Base class for construction errors."""
    pass


class ModulusMismatch(QcError):
    """Raised when combining polynomials from rings with different n."""
    pass


class ZeroGenerator(QcError):
    """Raised when g f0 = g f1 = 0 in F_2[x]/(x^n - 1)."""
    pass


class PositionOutOfRange(QcError):
    """Raised when a coordinate index is outside 1..n."""
    pass


class NotAcdCode(QcError):
    """Raised when shortening is requested for a code with nontrivial hull."""
    pass


@dataclass(frozen=True, eq=False)
class PolyModXn:
    """An element of F_2[x]/(x^n - 1); coeffs[i] is the coefficient of x^i."""
    n: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise QcError(f"ring length must be positive, got {self.n}")
        if self.coeffs.shape != (self.n,):
            raise QcError(f"expected {self.n} coefficients, got shape {self.coeffs.shape}")

    @classmethod
    def from_exponents(cls, n: int, exponents: Iterable[int]) -> "PolyModXn":
        """sum of x^e over the exponents, reduced by x^n = 1."""
        coeffs = np.zeros(n, dtype=np.uint8)
        for e in exponents:
            if e < 0:
                raise QcError(f"negative exponent {e}")
            coeffs[e % n] ^= 1
        coeffs.setflags(write=False)
        return cls(n=n, coeffs=coeffs)

    @classmethod
    def from_poly(cls, n: int, poly: galois.Poly) -> "PolyModXn":
        reduced = poly % modulus_poly(n)
        coeffs = np.zeros(n, dtype=np.uint8)
        ascending = reduced.coeffs[::-1].view(np.ndarray).astype(np.uint8)
        coeffs[:ascending.size] = ascending
        coeffs.setflags(write=False)
        return cls(n=n, coeffs=coeffs)

    def to_poly(self) -> galois.Poly:
        return galois.Poly(GF2(self.coeffs[::-1].copy()))

    def exponents(self) -> List[int]:
        return [int(e) for e in np.flatnonzero(self.coeffs)]

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyModXn):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None


@dataclass(frozen=True)
class QcSpec:
    """Length n and the polynomials g, f0, f1 of a 1-generator QC code."""
    n: int
    g: PolyModXn
    f0: PolyModXn
    f1: PolyModXn

    def __post_init__(self):
        for name in ("g", "f0", "f1"):
            if getattr(self, name).n != self.n:
                raise ModulusMismatch(f"{name} lives modulo x^{getattr(self, name).n} - 1, not x^{self.n} - 1")


def modulus_poly(n: int) -> galois.Poly:
    """x^n - 1 over F_2."""
    return galois.Poly.Degrees([n, 0], field=GF2)


def poly_mul_mod(a: PolyModXn, b: PolyModXn) -> PolyModXn:
    """
    Cyclic convolution a * b in F_2[x]/(x^n - 1).

    Raises:
        ModulusMismatch: if a and b belong to different rings
    """
    if a.n != b.n:
        raise ModulusMismatch(f"cannot multiply modulo x^{a.n} - 1 and x^{b.n} - 1")
    return PolyModXn.from_poly(a.n, a.to_poly() * b.to_poly())


def default_spec() -> FieldSpec:
    """F_4 over F_2 with omega^2 + omega + 1 = 0."""
    return make_field_spec(2, 1, 1)


def build_qc_additive(qc: QcSpec, spec: Optional[FieldSpec] = None) -> AdditiveCode:
    """
    The additive code spanned by the shifts x^i (g f0, g f1), i = 0..n-1.

    Raises:
        ZeroGenerator: if both products vanish
    """
    spec = spec or default_spec()
    if spec.q != 2:
        raise QcError(f"quasi-cyclic construction is binary; got q = {spec.q}")
    h0 = poly_mul_mod(qc.g, qc.f0)
    h1 = poly_mul_mod(qc.g, qc.f1)
    if h0.is_zero() and h1.is_zero():
        raise ZeroGenerator("g f0 and g f1 are both zero modulo x^n - 1")

    n = qc.n
    rows = np.zeros((n, 2 * n), dtype=np.uint8)
    for i in range(n):
        rows[i, 0::2] = np.roll(h0.coeffs, i)
        rows[i, 1::2] = np.roll(h1.coeffs, i)
    code = AdditiveCode.from_matrix(spec, GfMatrix.from_array(spec, rows, validate=False))
    logger.info(f"Built quasi-cyclic additive code n={code.n}, k={code.k}")
    return code


def expected_qc_dimension(qc: QcSpec) -> int:
    """n - deg gcd(g f0, g f1, x^n - 1)."""
    divisor = modulus_poly(qc.n)
    for part in (poly_mul_mod(qc.g, qc.f0), poly_mul_mod(qc.g, qc.f1)):
        if not part.is_zero():
            divisor = galois.gcd(divisor, part.to_poly())
    return qc.n - divisor.degree


# -- transforms ----------------------------------------------------------------

def extend(code: AdditiveCode, convention: str = EXTEND_SUM) -> AdditiveCode:
    """
    Append one coordinate to every codeword.

    "sum" appends the F_{q^2}-sum of all coordinates; "binary-parity"
    appends (sum of every entry of the binary image, 0).
    """
    if convention not in EXTEND_CONVENTIONS:
        raise ValueError(f"unknown extension convention {convention!r}; use one of {EXTEND_CONVENTIONS}")
    spec = code.spec
    if convention == EXTEND_BINARY_PARITY and spec.q != 2:
        raise QcError("binary-parity extension needs q = 2")

    t = spec.tables
    pairs = code.G.entries.reshape(code.k, code.n, 2)
    extra = np.zeros((code.k, 2), dtype=np.uint8)
    for r in range(code.k):
        if convention == EXTEND_SUM:
            for j in range(code.n):
                extra[r] = t.add[extra[r], pairs[r, j]]
        else:
            extra[r, 0] = int(pairs[r].sum()) % 2
    G = hstack([code.G, GfMatrix.from_array(spec, extra, validate=False)])
    return AdditiveCode(spec=spec, n=code.n + 1, G=G)


def augment(code: AdditiveCode, rows: Sequence[Sequence[ExtElem]]) -> AdditiveCode:
    """Add phi(row) for every supplied F_{q^2} vector and re-reduce to a basis."""
    for row in rows:
        if len(row) != code.n:
            raise DimensionMismatch(f"augmenting row of length {len(row)} for a length-{code.n} code")
    extra = stack_rows(code.spec, (phi(row) for row in rows), 2 * code.n)
    return stack_codes(code, extra)


def all_ones_rows(spec: FieldSpec, n: int) -> List[List[ExtElem]]:
    """{1_n, omega * 1_n}."""
    return [[spec.one] * n, [ext_mul(spec.omega, spec.one)] * n]


def augment_all_ones(code: AdditiveCode) -> AdditiveCode:
    return augment(code, all_ones_rows(code.spec, code.n))


def shorten_acd(code: AdditiveCode, position: int) -> AdditiveCode:
    """
    Keep the codewords vanishing at ``position`` (1-based) and delete it.

    Raises:
        PositionOutOfRange: if position is outside 1..n
        NotAcdCode: if the code has a nontrivial hull
    """
    if not 1 <= position <= code.n:
        raise PositionOutOfRange(f"position {position} outside 1..{code.n}")
    if not is_acd(code):
        raise NotAcdCode("shortening is defined here for ACD codes only")
    spec = code.spec
    keep = [c for c in range(2 * code.n) if c // 2 != position - 1]
    if code.k == 0:
        return AdditiveCode(spec=spec, n=code.n - 1, G=GfMatrix.zeros(spec, 0, 2 * code.n - 2))
    combos = null_space(code.block(position - 1).T)
    if combos.rows == 0:
        return AdditiveCode(spec=spec, n=code.n - 1, G=GfMatrix.zeros(spec, 0, 2 * code.n - 2))
    sub = combos @ code.G
    return AdditiveCode(spec=spec, n=code.n - 1, G=sub[:, keep])
