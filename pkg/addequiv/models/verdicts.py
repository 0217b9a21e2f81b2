"""
Data models for the linearity test: the Kronecker system S and the verdicts.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from addequiv.constants import (
    VERDICT_EQUIVALENT,
    VERDICT_STRICTLY_ADDITIVE,
    VERDICT_UNDECIDED,
)
from addequiv.core.linalg import GfMatrix, unvec
from addequiv.models.codes import LinearCodeExt


@dataclass(frozen=True, eq=False)
class SMatrix:
    """
    The 2nk x (k^2 + 4n) system whose null space parametrizes every R with
    R G_i = G_i T_i for all blocks.

    Unknowns are x = (vec R, vec T_1, ..., vec T_n) with column-major vec.
    Block row i (0-based) holds G_i^T (x) I_k in columns 0..k^2-1 and
    -(I_2 (x) G_i) in columns k^2 + 4i .. k^2 + 4i + 3.
    """
    s: GfMatrix = field(repr=False)
    n: int
    k: int

    @property
    def shape(self) -> Tuple[int, int]:
        return self.s.shape

    def r_columns(self) -> slice:
        return slice(0, self.k * self.k)

    def t_columns(self, i: int) -> slice:
        start = self.k * self.k + 4 * i
        return slice(start, start + 4)

    def unpack(self, x) -> Tuple[GfMatrix, List[GfMatrix]]:
        """Split a solution vector into (R, [T_1, ..., T_n])."""
        spec = self.s.spec
        flat = x.entries.reshape(-1) if isinstance(x, GfMatrix) else x
        R = unvec(flat[self.r_columns()], self.k, self.k, spec)
        Ts = [unvec(flat[self.t_columns(i)], 2, 2, spec) for i in range(self.n)]
        return R, Ts


class StrictReason(str, Enum):
    """Why a code is strictly additive."""
    ODD_DIMENSION_K = "OddDimensionK"
    RANK_ONE_BLOCK = "RankOneBlock"
    ODD_NULLITY = "OddNullity"
    SEARCH_EXHAUSTED = "SearchExhaustedNoWitness"


@dataclass(frozen=True)
class StrictlyAdditive:
    """Certificate that no monomially equivalent F_{q^2}-linear code exists."""
    reason: StrictReason
    block_index: Optional[int] = None  # 1-based, for RankOneBlock
    nullity: Optional[int] = None

    tag = VERDICT_STRICTLY_ADDITIVE

    def describe(self) -> str:
        if self.reason == StrictReason.RANK_ONE_BLOCK:
            return f"{self.reason.value}({self.block_index})"
        if self.reason == StrictReason.ODD_NULLITY:
            return f"{self.reason.value}({self.nullity})"
        return self.reason.value


@dataclass(frozen=True, eq=False)
class EquivalentToLinear:
    """
    A witness: R, one 2x2 block A_i per coordinate and the linear code
    spanned by phi^{-1}(G A).

    R G = G (A (I_n (x) M_omega) A^{-1}) holds for the code's own G, with
    A_i = I_2 on coordinates that were punctured as all-zero.
    """
    R: GfMatrix = field(repr=False)
    A_blocks: List[GfMatrix] = field(repr=False)
    linear_generator: LinearCodeExt = field(repr=False)
    nullity: int
    candidates_tried: int = 0

    tag = VERDICT_EQUIVALENT

    def describe(self) -> str:
        return f"EquivalentToLinear(nullity={self.nullity})"


@dataclass(frozen=True)
class Undecided:
    """The null-space search needed more than its budget of candidates."""
    nullity: int
    required: int
    budget: int

    tag = VERDICT_UNDECIDED

    def describe(self) -> str:
        return f"SearchBudgetExceeded({self.nullity})"


LinearityVerdict = Union[StrictlyAdditive, EquivalentToLinear, Undecided]


@dataclass
class PipelineTrace:
    """Stage-by-stage record of one linearity test."""
    n: int
    k: int
    punctured: List[int] = field(default_factory=list)  # 1-based original indices
    block_ranks: List[int] = field(default_factory=list)
    s_shape: Optional[Tuple[int, int]] = None
    nullity: Optional[int] = None
    timings: Dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class WitnessCheck:
    """Outcome of re-verifying a witness against a code."""
    conjugation: bool  # R G = G A (I (x) M) A^{-1}
    quadratic: bool  # R^2 + c1 R + c0 I = 0
    linear_image: Optional[bool]  # rowspace(G A) = phi(linear code); None if no code given
    determinants: List[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.conjugation and self.quadratic and self.linear_image is not False
