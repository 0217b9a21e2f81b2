"""
Operations on additive codes: the phi map, weights, the omega-closure
(F_{q^2}-linearity) test, symplectic duality, hull/ACD checks and the
Hermitian LCD check for F_{q^2}-linear codes.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from addequiv.core.fieldcore import (
    ExtElem,
    FieldMismatch,
    FieldSpec,
    ext_add,
    ext_inv,
    ext_mul,
    ext_sub,
    frobenius,
    regular_repr,
)
from addequiv.core.linalg import (
    DimensionMismatch,
    GfMatrix,
    NoSolution,
    block_diag,
    kron,
    null_space,
    rank,
    row_space_intersection,
    solve,
    vstack,
)
from addequiv.models.codes import (
    AdditiveCode,
    BlockColumn,
    CodeError,
    InvariantViolation,
    LinearCodeExt,
    RankDeficientGenerator,
)

logger = logging.getLogger(__name__)


# -- the phi map ---------------------------------------------------------------

def phi(v: Sequence[ExtElem]) -> np.ndarray:
    """(z_1, ..., z_n) -> (a_1, b_1 | ... | a_n, b_n) with z_i = a_i + b_i*omega."""
    out = np.zeros(2 * len(v), dtype=np.uint8)
    for i, z in enumerate(v):
        out[2 * i] = z.a
        out[2 * i + 1] = z.b
    return out


def phi_inverse(x, spec: FieldSpec) -> List[ExtElem]:
    """Inverse of phi for a length-2n vector over F_q."""
    flat = np.asarray(x).reshape(-1)
    if flat.size % 2:
        raise DimensionMismatch(f"phi-image must have even length, got {flat.size}")
    return [ExtElem(int(flat[2 * i]), int(flat[2 * i + 1]), spec) for i in range(flat.size // 2)]


def hamming_weight(x) -> int:
    """Number of coordinates whose pair (a_i, b_i) is nonzero."""
    pairs = np.asarray(x).reshape(-1, 2)
    return int(np.count_nonzero(pairs.any(axis=1)))


def omega_action(spec: FieldSpec, n: int) -> GfMatrix:
    """I_n (x) M_omega: multiplication by omega on every coordinate of phi-images."""
    return kron(GfMatrix.identity(spec, n), GfMatrix.from_array(spec, spec.companion))


def symplectic_matrix(spec: FieldSpec, n: int) -> GfMatrix:
    """J = I_n (x) [[0, 1], [-1, 0]], so that <x, y>_s = x J y^T."""
    block = GfMatrix.from_array(spec, [[0, 1], [spec.neg(1), 0]])
    return kron(GfMatrix.identity(spec, n), block)


def symplectic_product(x, y, spec: FieldSpec) -> int:
    """sum_i (a_i d_i - b_i c_i) for x = (a_i, b_i), y = (c_i, d_i)."""
    t = spec.tables
    xs = np.asarray(x, dtype=np.uint8).reshape(-1, 2)
    ys = np.asarray(y, dtype=np.uint8).reshape(-1, 2)
    if xs.shape != ys.shape:
        raise DimensionMismatch(f"vectors of length {xs.size} and {ys.size}")
    total = 0
    for (a, b), (c, d) in zip(xs, ys):
        term = t.add[t.mul[a, d], t.neg[t.mul[b, c]]]
        total = int(t.add[total, term])
    return total


def alternating_form(x: Sequence[ExtElem], y: Sequence[ExtElem], spec: FieldSpec) -> ExtElem:
    """
    sum_i (x_i y_i^q - x_i^q y_i) / (omega^q - omega), computed in F_{q^2}.

    The value always lies in F_q (its omega-coordinate is zero).
    """
    if len(x) != len(y):
        raise DimensionMismatch(f"vectors of length {len(x)} and {len(y)}")
    total = spec.zero
    for xi, yi in zip(x, y):
        if xi.spec != spec or yi.spec != spec:
            raise FieldMismatch("vector entries belong to a different field spec")
        term = ext_sub(ext_mul(xi, frobenius(yi)), ext_mul(frobenius(xi), yi))
        total = ext_add(total, term)
    return ext_mul(total, ext_inv(spec.conjugate_gap))


def hermitian_product(x: Sequence[ExtElem], y: Sequence[ExtElem], spec: FieldSpec) -> ExtElem:
    """sum_i x_i y_i^q."""
    total = spec.zero
    for xi, yi in zip(x, y):
        total = ext_add(total, ext_mul(xi, frobenius(yi)))
    return total


# -- block structure -----------------------------------------------------------

def block_columns(code: AdditiveCode) -> List[BlockColumn]:
    """Every k x 2 block column G_i with its rank (indices 1-based)."""
    columns = []
    for i in range(code.n):
        gi = code.block(i)
        columns.append(BlockColumn(index=i + 1, Gi=gi, rank=rank(gi)))
    return columns


def apply_block_transform(
    code: AdditiveCode,
    blocks: Sequence[GfMatrix],
    permutation: Optional[Sequence[int]] = None,
) -> AdditiveCode:
    """
    G -> G * diag(A_1, ..., A_n) * (P (x) I_2).

    ``permutation[j]`` is the (0-based) old coordinate moved to position j.
    """
    if len(blocks) != code.n:
        raise DimensionMismatch(f"{len(blocks)} blocks for a length-{code.n} code")
    if code.k == 0:
        return code
    transformed = code.G @ block_diag(list(blocks))
    if permutation is not None:
        if sorted(permutation) != list(range(code.n)):
            raise ValueError(f"{list(permutation)} is not a permutation of 0..{code.n - 1}")
        columns = [c for j in permutation for c in (2 * j, 2 * j + 1)]
        transformed = transformed[:, columns]
    return AdditiveCode(spec=code.spec, n=code.n, G=transformed)


# -- linearity -----------------------------------------------------------------

def is_linear(code: AdditiveCode) -> Tuple[bool, Optional[GfMatrix]]:
    """
    Decide whether phi(C) is closed under coordinatewise multiplication by omega.

    Returns:
        (True, R) with R G = G (I_n (x) M_omega) when closed, else (False, None)
    """
    if code.k % 2:
        return False, None
    if code.k == 0:
        return True, GfMatrix.zeros(code.spec, 0, 0)
    shifted = code.G @ omega_action(code.spec, code.n)
    try:
        r_transposed = solve(code.G.T, shifted.T)
    except NoSolution:
        return False, None
    return True, r_transposed.T


def linear_image(lc: LinearCodeExt) -> AdditiveCode:
    """
    phi(C) for an F_{q^2}-linear code, generated by phi(r) and phi(omega*r).

    Raises:
        InvariantViolation: if the rows are not F_{q^2}-independent
    """
    spec = lc.spec
    if lc.dim == 0:
        return AdditiveCode(spec=spec, n=lc.n, G=GfMatrix.zeros(spec, 0, 2 * lc.n))
    rows = []
    for row in lc.rows:
        rows.append(phi(row))
        rows.append(phi([ext_mul(spec.omega, z) for z in row]))
    G = GfMatrix.from_array(spec, np.array(rows))
    try:
        return AdditiveCode.from_matrix(spec, G, reduce=False)
    except RankDeficientGenerator as exc:
        raise InvariantViolation(
            f"F_q-dimension of the phi-image is below 2m = {2 * lc.dim}"
        ) from exc


# -- duality -------------------------------------------------------------------

def symplectic_dual(code: AdditiveCode) -> AdditiveCode:
    """C^{perp_s}: the null space of G J, of dimension 2n - k."""
    J = symplectic_matrix(code.spec, code.n)
    if code.k == 0:
        basis = GfMatrix.identity(code.spec, 2 * code.n)
    else:
        basis = null_space(code.G @ J)
    return AdditiveCode(spec=code.spec, n=code.n, G=basis)


def hull(code: AdditiveCode) -> Tuple[AdditiveCode, int]:
    """C ∩ C^{perp_s} with its F_q-dimension."""
    dual = symplectic_dual(code)
    common = row_space_intersection(code.G, dual.G)
    return AdditiveCode(spec=code.spec, n=code.n, G=common), common.rows


def is_acd(code: AdditiveCode) -> bool:
    """
    True when the hull is trivial.

    Computed twice, from the hull and from rank(G J G^T) = k.

    Raises:
        InvariantViolation: if the two computations disagree
    """
    _, hull_dim = hull(code)
    if code.k == 0:
        gram_full = True
    else:
        J = symplectic_matrix(code.spec, code.n)
        gram_full = rank(code.G @ J @ code.G.T) == code.k
    if gram_full != (hull_dim == 0):
        raise InvariantViolation(
            f"hull dimension {hull_dim} disagrees with Gram matrix rank test"
        )
    return gram_full


def _regular_block_matrix(entries: Sequence[Sequence[ExtElem]], spec: FieldSpec) -> GfMatrix:
    rows = len(entries)
    cols = len(entries[0]) if rows else 0
    out = np.zeros((2 * rows, 2 * cols), dtype=np.uint8)
    for r, row in enumerate(entries):
        for c, z in enumerate(row):
            out[2 * r:2 * r + 2, 2 * c:2 * c + 2] = regular_repr(z, spec)
    return GfMatrix.from_array(spec, out, validate=False)


def hermitian_lcd(lc: LinearCodeExt) -> bool:
    """
    True when C ∩ C^{perp_H} = {0}.

    Equivalent to the m x m Gram matrix G conj(G)^T being invertible over
    F_{q^2}, which is tested on its 2m x 2m regular representation over F_q.
    """
    spec = lc.spec
    if lc.dim == 0:
        return True
    gram = [[hermitian_product(x, y, spec) for y in lc.rows] for x in lc.rows]
    return rank(_regular_block_matrix(gram, spec)) == 2 * lc.dim


def hermitian_dual(lc: LinearCodeExt) -> AdditiveCode:
    """
    phi-image of C^{perp_H} = {y : sum_i x_i y_i^q = 0 for every row x}.

    y -> <x, y>_H is F_q-linear, so each row x contributes two F_q-linear
    equations in phi(y), read off from the images of the 2n unit vectors.
    """
    spec = lc.spec
    units = (spec.one, spec.omega)
    equations = np.zeros((2 * lc.dim, 2 * lc.n), dtype=np.uint8)
    for r, row in enumerate(lc.rows):
        for i, xi in enumerate(row):
            for part, unit in enumerate(units):
                value = ext_mul(xi, frobenius(unit))
                equations[2 * r, 2 * i + part] = value.a
                equations[2 * r + 1, 2 * i + part] = value.b
    if lc.dim == 0:
        basis = GfMatrix.identity(spec, 2 * lc.n)
    else:
        basis = null_space(GfMatrix.from_array(spec, equations, validate=False))
    return AdditiveCode(spec=spec, n=lc.n, G=basis)


# -- random instances ----------------------------------------------------------

def _det2(m: np.ndarray, spec: FieldSpec) -> int:
    t = spec.tables
    return int(t.add[t.mul[m[0, 0], m[1, 1]], t.neg[t.mul[m[0, 1], m[1, 0]]]])


def random_gl2(spec: FieldSpec, rng: np.random.Generator) -> GfMatrix:
    """Uniform random element of GL_2(F_q)."""
    while True:
        m = rng.integers(0, spec.q, size=(2, 2), dtype=np.uint8)
        if _det2(m, spec):
            return GfMatrix.from_array(spec, m, validate=False)


def random_sl2(spec: FieldSpec, rng: np.random.Generator) -> GfMatrix:
    """Uniform random element of SL_2(F_q)."""
    while True:
        m = rng.integers(0, spec.q, size=(2, 2), dtype=np.uint8)
        if _det2(m, spec) == 1:
            return GfMatrix.from_array(spec, m, validate=False)


def random_invertible(spec: FieldSpec, size: int, rng: np.random.Generator) -> GfMatrix:
    """Uniform random element of GL_size(F_q)."""
    while True:
        m = GfMatrix.from_array(spec, rng.integers(0, spec.q, size=(size, size)), validate=False)
        if rank(m) == size:
            return m


def random_code(spec: FieldSpec, n: int, k: int, rng: np.random.Generator) -> AdditiveCode:
    """Random additive code of length n and F_q-dimension exactly k."""
    if not 0 <= k <= 2 * n:
        raise CodeError(f"k = {k} outside 0..2n = {2 * n}")
    while True:
        G = GfMatrix.from_array(spec, rng.integers(0, spec.q, size=(k, 2 * n)), validate=False)
        if rank(G) == k:
            return AdditiveCode(spec=spec, n=n, G=G)


def random_linear_code(spec: FieldSpec, n: int, m: int, rng: np.random.Generator) -> LinearCodeExt:
    """Random F_{q^2}-linear code of length n and dimension exactly m."""
    if not 0 <= m <= n:
        raise CodeError(f"m = {m} outside 0..n = {n}")
    while True:
        pairs = rng.integers(0, spec.q, size=(m, n, 2), dtype=np.uint8)
        lc = LinearCodeExt.from_pairs(spec, pairs)
        try:
            linear_image(lc)
        except InvariantViolation:
            continue
        return lc


def stack_codes(code: AdditiveCode, extra: GfMatrix) -> AdditiveCode:
    """The code spanned by G and the rows of ``extra`` (re-reduced to a basis)."""
    if code.k == 0:
        combined = extra
    elif extra.rows == 0:
        return code
    else:
        combined = vstack([code.G, extra])
    return AdditiveCode.from_matrix(code.spec, combined)
