"""Helper utilities shared by the CLI and the batch runner."""
import hashlib
from pathlib import Path
from typing import Optional, Union

from addequiv.models.codes import AdditiveCode
from addequiv.models.schemas import CodeParameters, TraceSchema, VerdictReport
from addequiv.models.verdicts import LinearityVerdict, PipelineTrace


def content_digest(data: Union[str, bytes]) -> str:
    """
    sha256 hex digest of file contents.

    Args:
        data: Raw bytes, or text (encoded as UTF-8)

    Returns:
        Digest prefixed with the algorithm name, e.g. "sha256:ab12..."
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    return "sha256:" + hashlib.sha256(data).hexdigest()


def file_digest(path: Union[str, Path]) -> str:
    return content_digest(Path(path).read_bytes())


def code_parameters(code: AdditiveCode, distance: Optional[int] = None) -> CodeParameters:
    return CodeParameters(
        q=code.spec.q,
        n=code.n,
        k=code.k,
        d=distance,
        notation=code.parameters(distance),
    )


def verdict_report(
    code: AdditiveCode,
    verdict: LinearityVerdict,
    trace: PipelineTrace,
    digest: str,
    input_path: Optional[str] = None,
    witness_path: Optional[str] = None,
    distance: Optional[int] = None,
) -> VerdictReport:
    """
    Assemble the structured report of one linearity test.

    Everything except ``timings`` is a pure function of the input, so
    re-running on the same file reproduces the report.
    """
    return VerdictReport(
        input_path=input_path,
        input_digest=digest,
        parameters=code_parameters(code, distance),
        trace=TraceSchema(
            punctured=trace.punctured,
            block_ranks=trace.block_ranks,
            s_shape=trace.s_shape,
            nullity=trace.nullity,
        ),
        verdict=verdict.tag,
        reason=verdict.describe(),
        witness_path=witness_path,
        timings=trace.timings,
    )
