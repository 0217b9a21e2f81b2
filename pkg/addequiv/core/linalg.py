"""
Exact dense linear algebra over F_q.

GfMatrix is an immutable value wrapping a read-only uint8 array in galois'
integer encoding of F_q. Elimination dispatches to the bit-packed kernels in
``addequiv.core.packed`` for q in {2, 4} and to galois' row reduction for
every other field; both paths produce the same canonical RREF.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence

import numpy as np

from addequiv.config import get_settings
from addequiv.core.fieldcore import FieldMismatch, FieldSpec, InvalidFieldElement
from addequiv.core.packed import rref_gf2, rref_gf4
from addequiv.utils.errors import AddEquivError

logger = logging.getLogger(__name__)

METHOD_AUTO = "auto"
METHOD_PACKED = "packed"
METHOD_GENERIC = "generic"


class LinalgError(AddEquivError):
    """Base class for linear algebra errors."""
    pass


class Singular(LinalgError):
    """Raised when inverting a non-invertible matrix."""
    pass


class DimensionMismatch(LinalgError):
    """Raised when operand shapes are not conformable."""
    pass


class NoSolution(LinalgError):
    """Raised when a linear system a X = b is inconsistent."""
    pass


@dataclass(frozen=True, eq=False)
class GfMatrix:
    """Dense matrix over the base field F_q of ``spec``."""
    entries: np.ndarray
    spec: FieldSpec

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_array(cls, spec: FieldSpec, data, validate: bool = True) -> "GfMatrix":
        """
        Build a matrix from any 2-D array-like of integers.

        Raises:
            InvalidFieldElement: if an entry is outside 0..q-1
            DimensionMismatch: if data is not two-dimensional
        """
        raw = np.asarray(data)
        if raw.ndim != 2:
            raise DimensionMismatch(f"expected a 2-D array, got {raw.ndim} dimensions")
        if validate and raw.size and (raw.min() < 0 or raw.max() >= spec.q):
            bad = raw[(raw < 0) | (raw >= spec.q)][0]
            raise InvalidFieldElement(f"{bad} is not an element of F_{spec.q}")
        entries = np.array(raw, dtype=np.uint8, copy=True)
        entries.setflags(write=False)
        return cls(entries=entries, spec=spec)

    @classmethod
    def zeros(cls, spec: FieldSpec, rows: int, cols: int) -> "GfMatrix":
        return cls.from_array(spec, np.zeros((rows, cols), dtype=np.uint8), validate=False)

    @classmethod
    def identity(cls, spec: FieldSpec, size: int) -> "GfMatrix":
        return cls.from_array(spec, np.eye(size, dtype=np.uint8), validate=False)

    # -- shape and access ------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self):
        return self.entries.shape

    def gf(self):
        """The entries as a galois FieldArray (a fresh, writable copy)."""
        return self.spec.GF(self.entries.copy())

    def _wrap(self, data) -> "GfMatrix":
        return GfMatrix.from_array(self.spec, np.asarray(data), validate=False)

    def __getitem__(self, key):
        value = self.entries[key]
        if np.ndim(value) == 2:
            return self._wrap(value)
        if np.ndim(value) == 0:
            return int(value)
        return np.array(value, dtype=np.uint8)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GfMatrix):
            return NotImplemented
        return (
            _same_base(self.spec, other.spec)
            and self.shape == other.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"GfMatrix(q={self.spec.q}, shape={self.shape})"

    def is_zero(self) -> bool:
        return not self.entries.any()

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "GfMatrix") -> "GfMatrix":
        _check_conformable(self, other, self.shape == other.shape, "add")
        return self._wrap(self.spec.tables.add[self.entries, other.entries])

    def __sub__(self, other: "GfMatrix") -> "GfMatrix":
        _check_conformable(self, other, self.shape == other.shape, "subtract")
        t = self.spec.tables
        return self._wrap(t.add[self.entries, t.neg[other.entries]])

    def __neg__(self) -> "GfMatrix":
        return self._wrap(self.spec.tables.neg[self.entries])

    def __matmul__(self, other: "GfMatrix") -> "GfMatrix":
        _check_conformable(self, other, self.cols == other.rows, "multiply")
        if 0 in (self.rows, self.cols, other.cols):
            return GfMatrix.zeros(self.spec, self.rows, other.cols)
        product = self.gf() @ other.gf()
        return self._wrap(product.view(np.ndarray))

    def scale(self, c: int) -> "GfMatrix":
        """Multiply every entry by the scalar c of F_q."""
        return self._wrap(self.spec.tables.mul[self.spec.check_element(c), self.entries])

    @property
    def T(self) -> "GfMatrix":
        return self._wrap(self.entries.T)

    def det(self) -> int:
        """Determinant of a square matrix."""
        if self.rows != self.cols:
            raise DimensionMismatch(f"determinant of non-square {self.shape} matrix")
        if self.rows == 0:
            return 1
        return int(np.linalg.det(self.gf()))


def _same_base(a: FieldSpec, b: FieldSpec) -> bool:
    return a.q == b.q and a.modulus == b.modulus


def _check_conformable(a: GfMatrix, b: GfMatrix, ok: bool, op: str) -> None:
    if not _same_base(a.spec, b.spec):
        raise FieldMismatch(f"cannot {op} matrices over different base fields")
    if not ok:
        raise DimensionMismatch(f"cannot {op} {a.shape} and {b.shape} matrices")


def hstack(blocks: Sequence[GfMatrix]) -> GfMatrix:
    """Concatenate matrices side by side."""
    first = blocks[0]
    for block in blocks[1:]:
        _check_conformable(first, block, block.rows == first.rows, "hstack")
    return first._wrap(np.hstack([b.entries for b in blocks]))


def vstack(blocks: Sequence[GfMatrix]) -> GfMatrix:
    """Stack matrices on top of each other."""
    first = blocks[0]
    for block in blocks[1:]:
        _check_conformable(first, block, block.cols == first.cols, "vstack")
    return first._wrap(np.vstack([b.entries for b in blocks]))


def block_diag(blocks: Sequence[GfMatrix]) -> GfMatrix:
    """Block-diagonal matrix diag(blocks[0], blocks[1], ...)."""
    first = blocks[0]
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = np.zeros((rows, cols), dtype=np.uint8)
    r = c = 0
    for block in blocks:
        _check_conformable(first, block, True, "block_diag")
        out[r:r + block.rows, c:c + block.cols] = block.entries
        r += block.rows
        c += block.cols
    return first._wrap(out)


# -- elimination ---------------------------------------------------------------

class RrefResult(NamedTuple):
    matrix: GfMatrix
    pivots: List[int]
    rank: int


def _use_packed(spec: FieldSpec, method: str) -> bool:
    if method == METHOD_GENERIC:
        return False
    packable = spec.q in (2, 4)
    if method == METHOD_PACKED:
        if not packable:
            raise ValueError(f"packed elimination is only available for q in (2, 4), got q={spec.q}")
        return True
    return packable and get_settings().PACKED_ELIMINATION


def rref(m: GfMatrix, method: str = METHOD_AUTO) -> RrefResult:
    """
    Reduced row echelon form of m.

    Pivots are chosen as the first nonzero entry scanning top to bottom, so
    the result is the unique RREF whichever elimination path runs.

    Args:
        m: Matrix to reduce
        method: "auto" (packed for q in {2, 4} when enabled), "packed" or "generic"

    Returns:
        RrefResult(matrix, pivots, rank) with pivots in increasing order
    """
    if m.rows == 0 or m.cols == 0:
        return RrefResult(m, [], 0)

    if _use_packed(m.spec, method):
        kernel = rref_gf2 if m.spec.q == 2 else rref_gf4
        reduced, pivots = kernel(m.entries)
        return RrefResult(m._wrap(reduced), pivots, len(pivots))

    reduced = m.gf().row_reduce().view(np.ndarray)
    pivots = []
    for row in reduced:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            break
        pivots.append(int(nz[0]))
    return RrefResult(m._wrap(reduced), pivots, len(pivots))


def rank(m: GfMatrix) -> int:
    return rref(m).rank


def nullity(m: GfMatrix) -> int:
    return m.cols - rank(m)


def null_space(m: GfMatrix) -> GfMatrix:
    """
    Basis (as rows) of {x : m x = 0}.

    The basis vector for free column f has a 1 at f, zeros at the other free
    columns and minus the RREF column f at the pivot positions.
    """
    reduced, pivots, r = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = np.zeros((len(free), m.cols), dtype=np.uint8)
    if not free:
        return m._wrap(basis)
    basis[np.arange(len(free)), free] = 1
    if r:
        neg = m.spec.tables.neg
        basis[:, pivots] = neg[reduced.entries[:r][:, free]].T
    return m._wrap(basis)


def left_null_space(m: GfMatrix) -> GfMatrix:
    """Basis (as rows) of {y : y m = 0}."""
    return null_space(m.T)


def row_basis(m: GfMatrix) -> GfMatrix:
    """The nonzero rows of rref(m): a canonical basis of the row space."""
    reduced, _, r = rref(m)
    return reduced[:r, :]


def basis_row_indices(m: GfMatrix) -> List[int]:
    """Indices of a maximal independent subset of rows of m (earliest rows first)."""
    return rref(m.T).pivots


def row_space_equal(a: GfMatrix, b: GfMatrix) -> bool:
    """True when a and b have the same row space."""
    if a.cols != b.cols:
        raise DimensionMismatch(f"row spaces of width {a.cols} and {b.cols} cannot be compared")
    ra, rb = rank(a), rank(b)
    return ra == rb and rank(vstack([a, b])) == ra


def row_space_contains(a: GfMatrix, b: GfMatrix) -> bool:
    """True when every row of b lies in the row space of a."""
    return rank(vstack([a, b])) == rank(a)


def row_space_intersection(a: GfMatrix, b: GfMatrix) -> GfMatrix:
    """
    Basis (as rows) of rowspace(a) ∩ rowspace(b).

    Each relation u a + v b = 0 from the left null space of [a; b] gives the
    common vector u a.

    Raises:
        DimensionMismatch: if a and b have different column counts
    """
    if a.cols != b.cols:
        raise DimensionMismatch(
            f"cannot intersect row spaces of width {a.cols} and {b.cols}"
        )
    a = row_basis(a)
    b = row_basis(b)
    if a.rows == 0 or b.rows == 0:
        return GfMatrix.zeros(a.spec, 0, a.cols)
    relations = left_null_space(vstack([a, b]))
    if relations.rows == 0:
        return GfMatrix.zeros(a.spec, 0, a.cols)
    common = relations[:, :a.rows] @ a
    return row_basis(common)


def invert(m: GfMatrix) -> GfMatrix:
    """
    Inverse of a square matrix via rref([m | I]).

    Raises:
        DimensionMismatch: if m is not square
        Singular: if m has rank below its size
    """
    if m.rows != m.cols:
        raise DimensionMismatch(f"cannot invert non-square {m.shape} matrix")
    size = m.rows
    reduced, pivots, _ = rref(hstack([m, GfMatrix.identity(m.spec, size)]))
    if pivots[:size] != list(range(size)):
        raise Singular(f"{size}x{size} matrix has rank {sum(p < size for p in pivots)}")
    return reduced[:, size:]


def solve(a: GfMatrix, b: GfMatrix) -> GfMatrix:
    """
    A solution X of a X = b; free variables are set to zero.

    Raises:
        DimensionMismatch: if a and b have different row counts
        NoSolution: if the system is inconsistent
    """
    if a.rows != b.rows:
        raise DimensionMismatch(f"cannot solve {a.shape} system with {b.shape} right side")
    reduced, pivots, r = rref(hstack([a, b]))
    if any(p >= a.cols for p in pivots):
        raise NoSolution("right-hand side is not in the column space")
    x = np.zeros((a.cols, b.cols), dtype=np.uint8)
    x[pivots, :] = reduced.entries[:r, a.cols:]
    return a._wrap(x)


# -- Kronecker products and vectorization -------------------------------------

def kron(a: GfMatrix, b: GfMatrix) -> GfMatrix:
    """Kronecker product: block (i, j) equals a[i, j] * b."""
    _check_conformable(a, b, True, "kron")
    mul = a.spec.tables.mul
    product = mul[a.entries[:, None, :, None], b.entries[None, :, None, :]]
    return a._wrap(product.reshape(a.rows * b.rows, a.cols * b.cols))


def vec(m: GfMatrix) -> GfMatrix:
    """Column-major vectorization as a (rows*cols) x 1 column."""
    return m._wrap(m.entries.reshape(-1, order='F')[:, None])


def unvec(v, rows: int, cols: int, spec: Optional[FieldSpec] = None) -> GfMatrix:
    """
    Inverse of vec: fill a rows x cols matrix column by column.

    ``v`` may be a GfMatrix column/row or a 1-D integer array (then ``spec``
    is required).
    """
    if isinstance(v, GfMatrix):
        spec = v.spec
        flat = v.entries.reshape(-1)
    else:
        flat = np.asarray(v, dtype=np.uint8).reshape(-1)
    if flat.size != rows * cols:
        raise DimensionMismatch(f"cannot reshape {flat.size} entries into {rows}x{cols}")
    return GfMatrix.from_array(spec, flat.reshape((rows, cols), order='F'), validate=False)


# -- spectral helpers ----------------------------------------------------------

def has_base_field_eigenvalue(m: GfMatrix) -> bool:
    """True when m - lambda*I is singular for some lambda in F_q."""
    if m.rows != m.cols:
        raise DimensionMismatch(f"eigenvalues of non-square {m.shape} matrix")
    eye = GfMatrix.identity(m.spec, m.rows)
    return any(rank(m - eye.scale(lam)) < m.rows for lam in range(m.spec.q))


def quadratic_residual(m: GfMatrix) -> GfMatrix:
    """m^2 + c1*m + c0*I for the minimal polynomial of omega."""
    s = m.spec
    eye = GfMatrix.identity(s, m.rows)
    return (m @ m) + m.scale(s.c1) + eye.scale(s.c0)


def matrix_power(m: GfMatrix, exponent: int) -> GfMatrix:
    result = GfMatrix.identity(m.spec, m.rows)
    base = m
    while exponent:
        if exponent & 1:
            result = result @ base
        base = base @ base
        exponent >>= 1
    return result


def stack_rows(spec: FieldSpec, rows: Iterable[Sequence[int]], width: int) -> GfMatrix:
    """Matrix from an iterable of equal-length integer rows (possibly empty)."""
    data = [list(r) for r in rows]
    if not data:
        return GfMatrix.zeros(spec, 0, width)
    return GfMatrix.from_array(spec, data)
