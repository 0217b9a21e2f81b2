"""
Linearity test for additive codes.

Decides whether an additive code is monomially equivalent to an
F_{q^2}-linear code:

    0. odd k             -> strictly additive (sizes cannot match)
    1. puncture all-zero block columns
    2. some rank(G_i) = 1 -> strictly additive
    3. build S; odd nullity -> strictly additive
    4. search the null space of S for R with R^2 + c1 R + c0 I = 0;
       a hit yields a witness (R, A_1..A_n), exhaustion proves strict
       additivity, and an oversized space is reported as undecided.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from addequiv.config import get_settings
from addequiv.constants import SEARCH_CANDIDATE_LIMIT
from addequiv.core.linalg import (
    GfMatrix,
    block_diag,
    hstack,
    invert,
    kron,
    null_space,
    quadratic_residual,
    rank,
    row_space_equal,
    solve,
    unvec,
    vstack,
)
from addequiv.models.codes import AdditiveCode, LinearCodeExt
from addequiv.models.verdicts import (
    EquivalentToLinear,
    LinearityVerdict,
    PipelineTrace,
    SMatrix,
    StrictlyAdditive,
    StrictReason,
    Undecided,
    WitnessCheck,
)
from addequiv.services.addcode import is_linear, omega_action, phi_inverse
from addequiv.utils.errors import AddEquivError

logger = logging.getLogger(__name__)


class AllCoordinatesZero(AddEquivError):
    """Raised when every block column of the generator is zero."""
    pass


class RankDeficientBlock(AddEquivError):
    """Raised when S is requested for a code with a block column of rank below 2."""

    def __init__(self, message: str, index: int, block_rank: int):
        super().__init__(message)
        self.index = index
        self.block_rank = block_rank


# -- steps 1-3 -----------------------------------------------------------------

def puncture_zero_blocks(code: AdditiveCode) -> Tuple[AdditiveCode, List[int]]:
    """
    Delete every all-zero block column.

    Returns:
        (punctured code, removed coordinates as 1-based original indices)

    Raises:
        AllCoordinatesZero: if nothing would remain
    """
    pairs = code.G.entries.reshape(code.k, code.n, 2)
    nonzero = pairs.any(axis=(0, 2)) if code.k else np.zeros(code.n, dtype=bool)
    if not nonzero.any():
        raise AllCoordinatesZero(f"all {code.n} block columns of the generator are zero")
    removed = [int(i) + 1 for i in np.flatnonzero(~nonzero)]
    if not removed:
        return code, []
    keep = [c for i in np.flatnonzero(nonzero) for c in (2 * int(i), 2 * int(i) + 1)]
    logger.info(f"Punctured {len(removed)} all-zero coordinates: {removed}")
    return AdditiveCode(spec=code.spec, n=code.n - len(removed), G=code.G[:, keep]), removed


def build_S(code: AdditiveCode) -> SMatrix:
    """
    Assemble S with block row i equal to [G_i^T (x) I_k | 0 .. -(I_2 (x) G_i) .. 0].

    Raises:
        RankDeficientBlock: if some block column has rank below 2
    """
    spec, n, k = code.spec, code.n, code.k
    eye_k = GfMatrix.identity(spec, k)
    eye_2 = GfMatrix.identity(spec, 2)
    out = np.zeros((2 * n * k, k * k + 4 * n), dtype=np.uint8)
    for i in range(n):
        gi = code.block(i)
        block_rank = rank(gi)
        if block_rank < 2:
            raise RankDeficientBlock(
                f"block column {i + 1} has rank {block_rank}", index=i + 1, block_rank=block_rank
            )
        rows = slice(2 * k * i, 2 * k * (i + 1))
        out[rows, :k * k] = kron(gi.T, eye_k).entries
        out[rows, k * k + 4 * i:k * k + 4 * i + 4] = (-kron(eye_2, gi)).entries
    return SMatrix(s=GfMatrix.from_array(spec, out, validate=False), n=n, k=k)


def nullity_S(s: SMatrix) -> int:
    return s.s.cols - rank(s.s)


# -- step 4 --------------------------------------------------------------------

def _digits(indices: np.ndarray, q: int, d: int) -> np.ndarray:
    """Coefficient vectors for integer ranks, most significant digit first."""
    powers = q ** np.arange(d - 1, -1, -1, dtype=np.int64)
    return ((indices[:, None] // powers[None, :]) % q).astype(np.uint8)


def _first_nonzero(alphas: np.ndarray) -> np.ndarray:
    nz = alphas != 0
    first = np.argmax(nz, axis=1)
    return alphas[np.arange(alphas.shape[0]), first]


def _candidate_batches(q: int, d: int, batch_size: int) -> Iterator[np.ndarray]:
    """
    Nonzero coefficient vectors in rank order: first those whose leading
    coefficient is 1 (lexicographic), then the remaining ones (lexicographic).
    """
    total = q ** d
    for normalized in (True, False):
        if not normalized and q == 2:
            return
        for start in range(1, total, batch_size):
            alphas = _digits(np.arange(start, min(start + batch_size, total), dtype=np.int64), q, d)
            lead = _first_nonzero(alphas)
            mask = lead == 1 if normalized else lead > 1
            if mask.any():
                yield alphas[mask]


class _QuadraticEvaluator:
    """
    Evaluates R(alpha)^2 + c1 R(alpha) + c0 I for batches of alpha at once.

    With R(alpha) = sum_j alpha_j R_j the residual is the product of the
    coefficient rows (alpha_j alpha_l, c1 alpha_j, c0) with the stacked
    flattened matrices (R_j R_l, R_j, I).
    """

    def __init__(self, r_parts: Sequence[GfMatrix]):
        first = r_parts[0]
        self.spec = first.spec
        self.d = len(r_parts)
        k = first.rows
        products = [(rj @ rl).entries.reshape(-1) for rj in r_parts for rl in r_parts]
        linear = [rj.entries.reshape(-1) for rj in r_parts]
        eye = np.eye(k, dtype=np.uint8).reshape(-1)
        self.basis = self.spec.GF(np.vstack(products + linear + [eye]))

    def hits(self, alphas: np.ndarray) -> np.ndarray:
        """Indices (into the batch) of coefficient vectors satisfying the quadratic."""
        t = self.spec.tables
        s = self.spec
        quad = t.mul[alphas[:, :, None], alphas[:, None, :]].reshape(alphas.shape[0], -1)
        lin = t.mul[s.c1, alphas]
        const = np.full((alphas.shape[0], 1), s.c0, dtype=np.uint8)
        coeffs = self.spec.GF(np.hstack([quad, lin, const]))
        residual = (coeffs @ self.basis).view(np.ndarray)
        return np.flatnonzero(~residual.any(axis=1))


def conjugator(T: GfMatrix) -> GfMatrix:
    """
    A with T = A M_omega A^{-1}, for T satisfying T^2 + c1 T + c0 I = 0.

    Columns are [u | v] with v = e_1 (or e_2) and u = T v + c1 v, so that
    T u = -c0 v and T v = u - c1 v, i.e. T A = A M_omega.
    """
    spec = T.spec
    for v in ([1, 0], [0, 1]):
        col = GfMatrix.from_array(spec, [[v[0]], [v[1]]])
        u = T @ col + col.scale(spec.c1)
        A = hstack([u, col])
        if rank(A) == 2:
            return A
    raise AddEquivError("no cyclic vector found; T is scalar")


def extract_linear_generator(G: GfMatrix, spec) -> LinearCodeExt:
    """
    An F_{q^2}-basis of the omega-closed row space of G, as a linear code.

    Greedy: a row not yet in the F_q-span of the chosen rows and their
    omega-multiples is added together with its omega-multiple.
    """
    n = G.cols // 2
    omega = omega_action(spec, n)
    span = GfMatrix.zeros(spec, 0, G.cols)
    chosen = []
    for r in range(G.rows):
        row = G[r:r + 1, :]
        if span.rows and rank(vstack([span, row])) == span.rows:
            continue
        chosen.append(phi_inverse(row.entries, spec))
        span = vstack([span, row, row @ omega]) if span.rows else vstack([row, row @ omega])
        if span.rows == G.rows:
            break
    return LinearCodeExt(spec=spec, n=n, rows=tuple(tuple(r) for r in chosen))


def _expand_blocks(blocks: List[GfMatrix], removed: Sequence[int], n: int, spec) -> List[GfMatrix]:
    eye = GfMatrix.identity(spec, 2)
    it = iter(blocks)
    return [eye if (i + 1) in set(removed) else next(it) for i in range(n)]


def search_witness(
    code: AdditiveCode,
    s: SMatrix,
    budget: Optional[int] = None,
    basis: Optional[GfMatrix] = None,
    original: Optional[AdditiveCode] = None,
    removed: Sequence[int] = (),
    workers: Optional[int] = None,
) -> LinearityVerdict:
    """
    Enumerate R = sum_j alpha_j R_j over the null space of S.

    Args:
        code: Punctured code with every block of rank 2
        s: Its S matrix
        budget: Maximum q^d before returning Undecided
                (defaults to settings.WITNESS_SEARCH_BUDGET)
        basis: Null-space basis of S if already computed
        original: Unpunctured code the witness is expressed against
        removed: 1-based coordinates punctured from ``original``
        workers: Threads evaluating candidate batches
                 (defaults to settings.SEARCH_WORKERS)

    Returns:
        EquivalentToLinear, StrictlyAdditive(SearchExhaustedNoWitness) or Undecided
    """
    settings = get_settings()
    budget = budget or settings.WITNESS_SEARCH_BUDGET
    if budget > SEARCH_CANDIDATE_LIMIT:
        logger.warning(f"Search budget {budget} capped at {SEARCH_CANDIDATE_LIMIT}")
        budget = SEARCH_CANDIDATE_LIMIT
    original = original or code
    spec, q, k = code.spec, code.spec.q, code.k
    basis = basis if basis is not None else null_space(s.s)
    d = basis.rows
    if q ** d > budget:
        logger.warning(f"Null space of dimension {d} needs {q ** d} candidates > budget {budget}")
        return Undecided(nullity=d, required=q ** d, budget=budget)
    if d == 0:
        return StrictlyAdditive(reason=StrictReason.SEARCH_EXHAUSTED, nullity=0)

    r_parts = [unvec(basis.entries[j, :k * k], k, k, spec) for j in range(d)]
    evaluator = _QuadraticEvaluator(r_parts)
    workers = workers or settings.SEARCH_WORKERS
    tried = 0
    winner = None

    batches = _candidate_batches(q, d, settings.SEARCH_BATCH_SIZE)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        while winner is None:
            window = [b for _, b in zip(range(workers), batches)]
            if not window:
                break
            # map preserves batch order, so the lowest-ranked hit wins
            for alphas, hits in zip(window, executor.map(evaluator.hits, window)):
                if hits.size:
                    tried += int(hits[0]) + 1
                    winner = alphas[hits[0]]
                    break
                tried += alphas.shape[0]
            logger.debug(f"Searched {tried} candidates")

    if winner is None:
        logger.info(f"Exhausted {tried} candidates without a valid R")
        return StrictlyAdditive(reason=StrictReason.SEARCH_EXHAUSTED, nullity=d)

    R = GfMatrix.zeros(spec, k, k)
    for coeff, rj in zip(winner, r_parts):
        if coeff:
            R = R + rj.scale(int(coeff))

    blocks = []
    for i in range(code.n):
        gi = code.block(i)
        T = solve(gi, R @ gi)
        blocks.append(conjugator(T))
    A_blocks = _expand_blocks(blocks, removed, original.n, spec)
    transformed = original.G @ block_diag(A_blocks)
    linear = extract_linear_generator(transformed, spec)
    logger.info(f"Found witness after {tried} candidates; linear code has dimension {linear.dim}")
    return EquivalentToLinear(
        R=R, A_blocks=A_blocks, linear_generator=linear, nullity=d, candidates_tried=tried
    )


# -- orchestration -------------------------------------------------------------

def run_pipeline(
    code: AdditiveCode,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> Tuple[LinearityVerdict, PipelineTrace]:
    """
    Run the full test and return the verdict with its stage trace.

    Raises:
        AllCoordinatesZero: for the zero code or an all-zero generator
    """
    trace = PipelineTrace(n=code.n, k=code.k)
    started = time.perf_counter()

    def mark(stage: str) -> None:
        nonlocal started
        now = time.perf_counter()
        trace.timings[stage] = round(now - started, 6)
        started = now

    logger.info(f"Testing {code!r}")
    if code.k % 2:
        mark("parity")
        return StrictlyAdditive(reason=StrictReason.ODD_DIMENSION_K), trace

    punctured, removed = puncture_zero_blocks(code)
    trace.punctured = removed
    mark("puncture")

    survivors = [i + 1 for i in range(code.n) if (i + 1) not in set(removed)]
    trace.block_ranks = [rank(punctured.block(i)) for i in range(punctured.n)]
    mark("block_ranks")
    for position, block_rank in enumerate(trace.block_ranks):
        if block_rank == 1:
            index = survivors[position]
            logger.info(f"Block column {index} has rank 1")
            return StrictlyAdditive(reason=StrictReason.RANK_ONE_BLOCK, block_index=index), trace

    s = build_S(punctured)
    trace.s_shape = s.shape
    basis = null_space(s.s)
    d = basis.rows
    trace.nullity = d
    mark("nullity")
    logger.info(f"S has shape {s.shape[0]}x{s.shape[1]} and nullity {d}")
    if d % 2:
        return StrictlyAdditive(reason=StrictReason.ODD_NULLITY, nullity=d), trace

    verdict = search_witness(
        punctured, s, budget=budget, basis=basis, original=code, removed=removed,
        workers=workers,
    )
    mark("search")
    logger.info(f"Verdict: {verdict.tag} ({verdict.describe()})")
    return verdict, trace


def test_linearity(code: AdditiveCode, budget: Optional[int] = None) -> LinearityVerdict:
    """Decide whether the code is equivalent to an F_{q^2}-linear code."""
    verdict, _ = run_pipeline(code, budget=budget)
    return verdict


# not a pytest test function
test_linearity.__test__ = False


# -- witness verification ------------------------------------------------------

def derive_r(code: AdditiveCode, A_blocks: Sequence[GfMatrix]) -> Optional[GfMatrix]:
    """R with R G = G A (I (x) M) A^{-1}, or None if G A is not omega-closed."""
    transformed = AdditiveCode(spec=code.spec, n=code.n, G=code.G @ block_diag(list(A_blocks)))
    closed, R = is_linear(transformed)
    return R if closed else None


def verify_witness(
    code: AdditiveCode,
    R: Optional[GfMatrix],
    A_blocks: Sequence[GfMatrix],
    linear: Optional[LinearCodeExt] = None,
) -> WitnessCheck:
    """
    Re-check a witness against the code it claims to linearize.

    When R is omitted it is derived from G A. Singular blocks fail the
    conjugation check.
    """
    spec = code.spec
    determinants = [A.det() for A in A_blocks]
    if len(A_blocks) != code.n or any(det == 0 for det in determinants):
        return WitnessCheck(False, False, False if linear is not None else None, determinants)
    if R is None:
        R = derive_r(code, A_blocks)
        if R is None:
            return WitnessCheck(False, False, False if linear is not None else None, determinants)

    A = block_diag(list(A_blocks))
    A_inv = block_diag([invert(block) for block in A_blocks])
    conjugation = R @ code.G == code.G @ A @ omega_action(spec, code.n) @ A_inv
    quadratic = quadratic_residual(R).is_zero()

    linear_ok = None
    if linear is not None:
        linear_ok = row_space_equal(code.G @ A, linear.to_additive().G)
    return WitnessCheck(conjugation, quadratic, linear_ok, determinants)
