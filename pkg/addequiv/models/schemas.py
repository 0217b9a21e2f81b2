"""
Pydantic schemas for reports and batch manifests.

Reports are what the CLI prints (text) or serializes one per line
(json-lines); manifests describe table rows to reproduce.
"""
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from addequiv.constants import (
    EXTEND_CONVENTIONS,
    EXTEND_SUM,
    TIER_CORE,
    VERDICT_TAGS,
)


# Report Schemas

class CodeParameters(BaseModel):
    """Parameters of an additive code; d only when it was computed."""
    q: int
    n: int
    k: int
    d: Optional[int] = None
    notation: str  # e.g. "[22, 10, 9]_2^2"


class TraceSchema(BaseModel):
    """Pipeline trace mirroring the table columns."""
    punctured: List[int] = []  # 1-based coordinates removed as all-zero
    block_ranks: List[int] = []
    s_shape: Optional[Tuple[int, int]] = None
    nullity: Optional[int] = None


class VerdictReport(BaseModel):
    """Outcome of one linearity test."""
    kind: Literal["verdict"] = "verdict"
    input_path: Optional[str] = None
    input_digest: str = Field(..., description="sha256 of the input file contents")
    parameters: CodeParameters
    trace: TraceSchema
    verdict: str
    reason: str  # e.g. "OddNullity(1)", "RankOneBlock(10)"
    witness_path: Optional[str] = None
    timings: Dict[str, float] = {}

    @field_validator('verdict')
    @classmethod
    def validate_verdict(cls, v: str) -> str:
        if v not in VERDICT_TAGS:
            raise ValueError(f"verdict must be one of {VERDICT_TAGS}")
        return v


class DistanceReport(BaseModel):
    kind: Literal["distance"] = "distance"
    input_path: Optional[str] = None
    input_digest: str
    parameters: CodeParameters
    codewords: int
    seconds: float


class HullReport(BaseModel):
    kind: Literal["hull"] = "hull"
    input_path: Optional[str] = None
    input_digest: str
    parameters: CodeParameters
    hull_dimension: int
    acd: bool


class LcdReport(BaseModel):
    kind: Literal["lcd"] = "lcd"
    input_path: Optional[str] = None
    input_digest: str
    n: int
    dimension: int
    hermitian_lcd: bool


class QcReport(BaseModel):
    kind: Literal["qc"] = "qc"
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    n: int
    k: int
    expected_k: int


class TransformReport(BaseModel):
    kind: Literal["transform"] = "transform"
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    steps: List[str]
    parameters: CodeParameters


class WitnessReport(BaseModel):
    """Result of re-verifying a witness file against a code."""
    kind: Literal["witness"] = "witness"
    input_path: Optional[str] = None
    witness_path: Optional[str] = None
    conjugation: bool
    quadratic: bool
    linear_image: Optional[bool] = None
    determinants: List[int]
    special_linear: bool  # every det(A_i) = 1
    valid: bool


class OracleReport(BaseModel):
    """Agreement between the linearity test and the brute-force oracle."""
    kind: Literal["oracle"] = "oracle"
    seed: int
    samples: int
    agreements: int
    equivalent: int
    strictly_additive: int
    disagreements: List[str] = []


# Manifest Schemas

class ManifestSource(BaseModel):
    """Where a row's generator comes from; paths are relative to the manifest."""
    kind: Literal["qc", "matrix"]
    path: str


class TransformStep(BaseModel):
    """One derivation step applied to the source code."""
    op: Literal["extend", "augment", "shorten"]
    convention: str = EXTEND_SUM  # extend only
    position: Optional[int] = Field(None, ge=1)  # shorten only

    @model_validator(mode='after')
    def check_arguments(self) -> "TransformStep":
        if self.op == "extend" and self.convention not in EXTEND_CONVENTIONS:
            raise ValueError(f"extend convention must be one of {EXTEND_CONVENTIONS}")
        if self.op == "shorten" and self.position is None:
            raise ValueError("shorten needs a position")
        return self

    def describe(self) -> str:
        if self.op == "extend":
            return f"extend({self.convention})"
        if self.op == "shorten":
            return f"shorten({self.position})"
        return "augment"


class Expectation(BaseModel):
    """Expected table columns; omitted fields are not checked."""
    n: Optional[int] = None
    k: Optional[int] = None
    d: Optional[int] = None
    nullity: Optional[int] = None
    verdict: Optional[str] = None
    reason: Optional[str] = None  # StrictReason value, e.g. "OddNullity"
    rank_one_block: Optional[int] = Field(None, ge=1)
    acd: Optional[bool] = None

    @field_validator('verdict')
    @classmethod
    def validate_verdict(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and v not in VERDICT_TAGS:
            raise ValueError(f"verdict must be one of {VERDICT_TAGS}")
        return v


class ManifestRow(BaseModel):
    label: str = Field(..., min_length=1)
    source: Optional[ManifestSource] = None  # None: generators not available
    transforms: List[TransformStep] = []
    tier: Literal["core", "convention"] = TIER_CORE
    expect: Expectation = Expectation()
    note: Optional[str] = None


class Manifest(BaseModel):
    description: Optional[str] = None
    rows: List[ManifestRow]


class RowResult(BaseModel):
    """Outcome of one manifest row."""
    kind: Literal["row"] = "row"
    label: str
    tier: str
    status: str
    mismatches: List[str] = []
    message: Optional[str] = None
    report: Optional[VerdictReport] = None


class TableSummary(BaseModel):
    kind: Literal["summary"] = "summary"
    manifest: str
    total: int
    passed: int
    failed: int
    skipped: int
    convention_mismatches: int
    budget_exceeded: int

    @property
    def ok(self) -> bool:
        return self.failed == 0
