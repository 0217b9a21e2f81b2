"""
Brute-force equivalence oracle for tiny additive codes.

Tries every block transform A = diag(A_1, ..., A_n) with A_i in SL_2(F_2)
(q = 2) or GL_2(F_q) (otherwise) and reports whether some G A spans an
omega-closed space. Coordinate permutations commute with I_n (x) M_omega,
so they never change the outcome and are not enumerated.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from addequiv.config import get_settings
from addequiv.core.fieldcore import FieldSpec
from addequiv.core.linalg import GfMatrix, block_diag, rank
from addequiv.core.packed import rank_bitrows
from addequiv.models.codes import AdditiveCode
from addequiv.models.verdicts import EquivalentToLinear, Undecided
from addequiv.services.addcode import is_linear, random_code, random_linear_code
from addequiv.utils.errors import AddEquivError

logger = logging.getLogger(__name__)


class InstanceTooLarge(AddEquivError):
    """Raised when an instance exceeds the oracle's hard caps."""
    pass


@lru_cache(maxsize=None)
def _transform_group(spec: FieldSpec) -> Tuple[np.ndarray, ...]:
    """SL_2(F_2) for q = 2, GL_2(F_q) otherwise, as 2x2 uint8 arrays."""
    q = spec.q
    spec_tables = spec.tables
    group = []
    for a, b, c, d in itertools.product(range(q), repeat=4):
        det = spec_tables.add[spec_tables.mul[a, d], spec_tables.neg[spec_tables.mul[b, c]]]
        if (q == 2 and det == 1) or (q != 2 and det != 0):
            m = np.array([[a, b], [c, d]], dtype=np.uint8)
            m.setflags(write=False)
            group.append(m)
    return tuple(group)


def transform_group(spec: FieldSpec) -> List[GfMatrix]:
    return [GfMatrix.from_array(spec, m, validate=False) for m in _transform_group(spec)]


def _bit_contributions(code: AdditiveCode, group: Tuple[np.ndarray, ...]) -> List[List[Tuple[int, ...]]]:
    """
    contrib[i][h] holds, for every row r, the int bitset of row r of
    (G_i A_h) followed by row r of (G_i A_h M_omega), placed at coordinate i.
    """
    G = code.G.entries
    M = code.spec.companion
    contributions = []
    for i in range(code.n):
        gi = G[:, 2 * i:2 * i + 2].astype(np.int64)
        per_transform = []
        for A in group:
            ga = (gi @ A) % 2
            gam = (ga @ M) % 2
            shift = 2 * i
            rows = [
                (int(ga[r, 0]) << shift) | (int(ga[r, 1]) << (shift + 1))
                for r in range(code.k)
            ]
            omega_rows = [
                (int(gam[r, 0]) << shift) | (int(gam[r, 1]) << (shift + 1))
                for r in range(code.k)
            ]
            per_transform.append(tuple(rows + omega_rows))
        contributions.append(per_transform)
    return contributions


def _oracle_gf2(code: AdditiveCode) -> bool:
    group = _transform_group(code.spec)
    contributions = _bit_contributions(code, group)
    width = 2 * code.k
    for choice in itertools.product(range(len(group)), repeat=code.n):
        rows = [0] * width
        for i, h in enumerate(choice):
            for r, bits in enumerate(contributions[i][h]):
                rows[r] |= bits
        if rank_bitrows(rows) == code.k:
            return True
    return False


def _oracle_generic(code: AdditiveCode) -> bool:
    group = transform_group(code.spec)
    for choice in itertools.product(group, repeat=code.n):
        transformed = AdditiveCode(spec=code.spec, n=code.n, G=code.G @ block_diag(list(choice)))
        closed, _ = is_linear(transformed)
        if closed:
            return True
    return False


def oracle_equivalent_to_linear(code: AdditiveCode) -> bool:
    """
    True iff some block transform of the code is F_{q^2}-linear.

    Raises:
        InstanceTooLarge: if n or k exceed ORACLE_MAX_N / ORACLE_MAX_K
    """
    settings = get_settings()
    if code.n > settings.ORACLE_MAX_N or code.k > settings.ORACLE_MAX_K:
        raise InstanceTooLarge(
            f"oracle is capped at n <= {settings.ORACLE_MAX_N}, k <= {settings.ORACLE_MAX_K}; "
            f"got n = {code.n}, k = {code.k}"
        )
    if code.k % 2:
        return False
    if code.k == 0:
        return True
    if code.spec.q == 2:
        return _oracle_gf2(code)
    return _oracle_generic(code)


# -- agreement experiment ------------------------------------------------------

INSTANCE_KINDS = ("linear-image", "rank-one-block", "generic")


def _rank_one_block_code(spec: FieldSpec, n: int, k: int, rng: np.random.Generator) -> AdditiveCode:
    while True:
        G = rng.integers(0, spec.q, size=(k, 2 * n), dtype=np.uint8)
        scale = int(rng.integers(0, spec.q))
        G[:, 1] = spec.tables.mul[scale, G[:, 0]]
        if not G[:, 0].any():
            G[0, 0] = 1
            G[0, 1] = scale
        matrix = GfMatrix.from_array(spec, G, validate=False)
        if rank(matrix) == k:
            return AdditiveCode(spec=spec, n=n, G=matrix)


def random_instance(
    spec: FieldSpec,
    kind: str,
    rng: np.random.Generator,
    n_range: Tuple[int, int] = (2, 4),
    k_range: Tuple[int, int] = (2, 4),
) -> AdditiveCode:
    """A random oracle-scale code of the given kind."""
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    k = int(rng.integers(k_range[0], min(k_range[1], 2 * n) + 1))
    if kind == "linear-image":
        m = max(1, min(k // 2, n))
        return random_linear_code(spec, n, m, rng).to_additive()
    if kind == "rank-one-block":
        return _rank_one_block_code(spec, n, min(k, 2 * n - 1), rng)
    return random_code(spec, n, k, rng)


@dataclass
class OracleExperiment:
    samples: int = 0
    agreements: int = 0
    equivalent: int = 0
    strictly_additive: int = 0
    disagreements: List[str] = field(default_factory=list)


def oracle_experiment(
    spec: FieldSpec,
    samples: int,
    rng: np.random.Generator,
    n_range: Tuple[int, int] = (2, 4),
    k_range: Tuple[int, int] = (2, 4),
) -> OracleExperiment:
    """Compare test_linearity with the oracle on a seeded mix of random instances."""
    from addequiv.services.equivtest import test_linearity

    result = OracleExperiment()
    for i in range(samples):
        kind = INSTANCE_KINDS[i % len(INSTANCE_KINDS)]
        code = random_instance(spec, kind, rng, n_range, k_range)
        verdict = test_linearity(code)
        expected = oracle_equivalent_to_linear(code)
        decided = isinstance(verdict, EquivalentToLinear)
        result.samples += 1
        if expected:
            result.equivalent += 1
        else:
            result.strictly_additive += 1
        if decided == expected and not isinstance(verdict, Undecided):
            result.agreements += 1
        else:
            result.disagreements.append(
                f"sample {i} ({kind}, n={code.n}, k={code.k}): "
                f"oracle={expected}, test={verdict.describe()}"
            )
            logger.warning(result.disagreements[-1])
    return result
