"""
Batch reproduction of table rows listed in a manifest.

Each row builds its code (QC spec or matrix file, then derivation steps),
runs the linearity test, and compares the requested columns. Rows run on a
thread pool; results keep manifest order.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

from addequiv.config import get_settings
from addequiv.constants import (
    ROW_BUDGET_EXCEEDED,
    ROW_CONVENTION_MISMATCH,
    ROW_FAIL,
    ROW_PASS,
    ROW_SKIPPED_NO_DATA,
    TIER_CONVENTION,
)
from addequiv.models.codes import AdditiveCode
from addequiv.models.schemas import ManifestRow, RowResult, TableSummary, TransformStep
from addequiv.models.verdicts import StrictlyAdditive
from addequiv.parser.code_file import read_code_file
from addequiv.parser.manifest import load_manifest, resolve_source
from addequiv.parser.qc_spec import read_qc_file
from addequiv.services.addcode import is_acd
from addequiv.services.distance import BudgetExceeded, min_distance
from addequiv.services.equivtest import run_pipeline
from addequiv.services.qcbuilder import augment_all_ones, build_qc_additive, extend, shorten_acd
from addequiv.utils.errors import AddEquivError
from addequiv.utils.helpers import content_digest, verdict_report

logger = logging.getLogger(__name__)


def load_row_code(manifest_path, row: ManifestRow) -> Tuple[AdditiveCode, str]:
    """Build the row's code; returns it with the digest of its source file."""
    path = resolve_source(manifest_path, row.source.path)
    digest = content_digest(Path(path).read_bytes())
    if row.source.kind == "qc":
        code = build_qc_additive(read_qc_file(path))
    else:
        code = read_code_file(path, allow_rank_deficient=True)
    for step in row.transforms:
        code = apply_step(code, step)
    return code, digest


def apply_step(code: AdditiveCode, step: TransformStep) -> AdditiveCode:
    if step.op == "extend":
        return extend(code, step.convention)
    if step.op == "augment":
        return augment_all_ones(code)
    return shorten_acd(code, step.position)


def _compare(label: str, expected, actual, mismatches: List[str]) -> None:
    if expected is not None and expected != actual:
        mismatches.append(f"{label}: expected {expected}, got {actual}")


def verify_row(manifest_path, row: ManifestRow, budget: Optional[int] = None) -> RowResult:
    """Run one manifest row and classify the outcome."""
    if row.source is None:
        logger.warning(f"Row {row.label!r}: no generator data, skipping")
        return RowResult(label=row.label, tier=row.tier, status=ROW_SKIPPED_NO_DATA, message=row.note)

    try:
        code, digest = load_row_code(manifest_path, row)
        verdict, trace = run_pipeline(code, budget=budget)
    except (AddEquivError, OSError) as e:
        logger.error(f"Row {row.label!r} failed: {e}")
        return RowResult(label=row.label, tier=row.tier, status=ROW_FAIL, message=str(e))

    expect = row.expect
    mismatches: List[str] = []
    _compare("n", expect.n, code.n, mismatches)
    _compare("k", expect.k, code.k, mismatches)
    _compare("nullity", expect.nullity, trace.nullity, mismatches)
    _compare("verdict", expect.verdict, verdict.tag, mismatches)
    if isinstance(verdict, StrictlyAdditive):
        _compare("reason", expect.reason, verdict.reason.value, mismatches)
        _compare("rank_one_block", expect.rank_one_block, verdict.block_index, mismatches)
    else:
        _compare("reason", expect.reason, None, mismatches)
        _compare("rank_one_block", expect.rank_one_block, None, mismatches)
    if expect.acd is not None:
        _compare("acd", expect.acd, is_acd(code), mismatches)

    distance = None
    budget_hit = None
    if expect.d is not None:
        try:
            distance = min_distance(code)
            _compare("d", expect.d, distance, mismatches)
        except BudgetExceeded as e:
            budget_hit = str(e)

    report = verdict_report(code, verdict, trace, digest, row.source.path, distance=distance)
    if mismatches:
        status = ROW_CONVENTION_MISMATCH if row.tier == TIER_CONVENTION else ROW_FAIL
    elif budget_hit:
        status = ROW_BUDGET_EXCEEDED
    else:
        status = ROW_PASS
    return RowResult(
        label=row.label, tier=row.tier, status=status,
        mismatches=mismatches, message=budget_hit, report=report,
    )


def summarize(manifest_path, results: List[RowResult]) -> TableSummary:
    def count(status: str) -> int:
        return sum(1 for r in results if r.status == status)

    return TableSummary(
        manifest=str(manifest_path),
        total=len(results),
        passed=count(ROW_PASS),
        failed=count(ROW_FAIL),
        skipped=count(ROW_SKIPPED_NO_DATA),
        convention_mismatches=count(ROW_CONVENTION_MISMATCH),
        budget_exceeded=count(ROW_BUDGET_EXCEEDED),
    )


def verify_table(
    manifest_path,
    budget: Optional[int] = None,
    workers: Optional[int] = None,
) -> Tuple[List[RowResult], TableSummary]:
    """
    Verify every manifest row.

    Raises:
        FormatError: if the manifest itself is malformed
    """
    manifest = load_manifest(manifest_path)
    workers = workers or get_settings().TABLE_WORKERS
    logger.info(f"Verifying {len(manifest.rows)} rows from {manifest_path} with {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(executor.map(lambda row: verify_row(manifest_path, row, budget), manifest.rows))
    return results, summarize(manifest_path, results)
