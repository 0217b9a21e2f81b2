"""
Data models for additive codes over F_{q^2} and their linear counterparts.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from addequiv.core.fieldcore import ExtElem, FieldMismatch, FieldSpec
from addequiv.core.linalg import GfMatrix, basis_row_indices, rank
from addequiv.utils.errors import AddEquivError

logger = logging.getLogger(__name__)


class CodeError(AddEquivError):
    """Base class for malformed code objects."""
    pass


class RankDeficientGenerator(CodeError):
    """Raised when a generator matrix has dependent rows and reduction was not allowed."""
    pass


class InvariantViolation(CodeError):
    """Raised when a computed quantity contradicts an independently computed one."""
    pass


@dataclass(frozen=True, eq=False)
class AdditiveCode:
    """
    An additive code of length n over F_{q^2}.

    G is a k x 2n matrix over F_q of rank k whose rows are an F_q-basis of
    phi(C); coordinate i occupies columns 2i and 2i + 1 (0-based). k = 0 is
    allowed and stands for the zero code.
    """
    spec: FieldSpec
    n: int
    G: GfMatrix

    def __post_init__(self):
        if self.G.cols != 2 * self.n:
            raise CodeError(f"generator has {self.G.cols} columns, expected 2n = {2 * self.n}")
        if self.G.spec.q != self.spec.q:
            raise FieldMismatch("generator matrix and code use different base fields")
        if self.G.rows > 2 * self.n:
            raise CodeError(f"k = {self.G.rows} exceeds 2n = {2 * self.n}")

    @classmethod
    def from_matrix(
        cls,
        spec: FieldSpec,
        G: GfMatrix,
        reduce: bool = True,
    ) -> "AdditiveCode":
        """
        Build a code from a possibly redundant generator matrix.

        Dependent rows are dropped (keeping the earliest independent rows)
        with a warning when ``reduce`` is set; otherwise they are rejected.

        Raises:
            RankDeficientGenerator: if rows are dependent and reduce is False
        """
        if G.cols % 2:
            raise CodeError(f"generator has an odd number of columns ({G.cols})")
        keep = basis_row_indices(G) if G.rows else []
        if len(keep) < G.rows:
            if not reduce:
                raise RankDeficientGenerator(
                    f"generator has {G.rows} rows but rank {len(keep)}"
                )
            logger.warning(f"Reducing {G.rows} generator rows to a basis of {len(keep)}")
            G = G[keep, :] if keep else GfMatrix.zeros(spec, 0, G.cols)
        return cls(spec=spec, n=G.cols // 2, G=G)

    @property
    def k(self) -> int:
        return self.G.rows

    def block(self, i: int) -> GfMatrix:
        """The k x 2 block column of coordinate i (0-based)."""
        return self.G[:, 2 * i:2 * i + 2]

    def parameters(self, distance: int = None) -> str:
        """Parameters in the form [n, k/2, d]_q^2 (d omitted when unknown)."""
        half = f"{self.k // 2}" if self.k % 2 == 0 else f"{self.k}/2"
        body = f"{self.n}, {half}" if distance is None else f"{self.n}, {half}, {distance}"
        return f"[{body}]_{self.spec.q}^2"

    def validate(self) -> None:
        """Re-check full row rank."""
        if rank(self.G) != self.k:
            raise InvariantViolation("generator rows are not independent")

    def __repr__(self) -> str:
        return f"AdditiveCode(q={self.spec.q}, n={self.n}, k={self.k})"


@dataclass(frozen=True)
class BlockColumn:
    """The two columns of G belonging to one coordinate; index is 1-based."""
    index: int
    Gi: GfMatrix = field(repr=False)
    rank: int


@dataclass(frozen=True, eq=False)
class LinearCodeExt:
    """
    An F_{q^2}-linear code given by an m x n generator matrix of ExtElem.

    Rows must be F_{q^2}-independent; to_additive() checks that the phi-image
    of the row span has F_q-dimension 2m.
    """
    spec: FieldSpec
    n: int
    rows: Tuple[Tuple[ExtElem, ...], ...]

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.n:
                raise CodeError(f"row of length {len(row)} in a length-{self.n} code")
            for z in row:
                if z.spec != self.spec:
                    raise FieldMismatch("matrix entry belongs to a different field spec")

    @classmethod
    def from_pairs(cls, spec: FieldSpec, pairs: np.ndarray) -> "LinearCodeExt":
        """Build from an m x n x 2 array of (a, b) coordinates."""
        pairs = np.asarray(pairs)
        if pairs.ndim != 3 or pairs.shape[2] != 2:
            raise CodeError(f"expected an m x n x 2 array, got shape {pairs.shape}")
        m, n = pairs.shape[0], pairs.shape[1]
        rows = tuple(
            tuple(ExtElem(int(pairs[r, c, 0]), int(pairs[r, c, 1]), spec) for c in range(n))
            for r in range(m)
        )
        return cls(spec=spec, n=n, rows=rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def pairs(self) -> np.ndarray:
        """The generator as an m x n x 2 uint8 array of (a, b) coordinates."""
        out = np.zeros((self.dim, self.n, 2), dtype=np.uint8)
        for r, row in enumerate(self.rows):
            for c, z in enumerate(row):
                out[r, c] = (z.a, z.b)
        return out

    def to_additive(self) -> AdditiveCode:
        """The additive code phi(C) with generator rows phi(r) and phi(omega*r)."""
        from addequiv.services.addcode import linear_image
        return linear_image(self)

    def __repr__(self) -> str:
        return f"LinearCodeExt(q^2={self.spec.q ** 2}, n={self.n}, m={self.dim})"


def block_ranks(code: AdditiveCode) -> List[int]:
    """rank(G_i) for every coordinate, in coordinate order."""
    return [rank(code.block(i)) for i in range(code.n)]

