"""
Command-line front end.

Usage:
    addequiv [global flags] <command> [arguments]

Examples:
    # Build a code file from a quasi-cyclic spec
    addequiv qc data/qc/acd_22.qc -o acd_22.code

    # Decide whether a code is equivalent to an F_{q^2}-linear code
    addequiv test acd_22.code --witness-out acd_22.witness

    # Reproduce every manifest row as JSON lines
    addequiv --format json-lines verify-table data/manifests/tables.json

Exit codes of `test` depend only on the verdict: 0 strictly additive,
1 equivalent, 2 undecided. Errors exit with 3 (format), 4 (budget) or
5 (any other library error).
"""
import argparse
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

import numpy as np
from pydantic import BaseModel

from addequiv import __version__
from addequiv.config import Settings, get_settings
from addequiv.constants import (
    EXIT_BUDGET_EXCEEDED,
    EXIT_FORMAT_ERROR,
    EXIT_LIBRARY_ERROR,
    EXTEND_CONVENTIONS,
    EXTEND_SUM,
    FORMAT_JSON_LINES,
    FORMAT_TEXT,
    OUTPUT_FORMATS,
    VERDICT_EXIT_CODES,
)
from addequiv.core.fieldcore import FieldMismatch
from addequiv.models.codes import AdditiveCode
from addequiv.models.schemas import (
    DistanceReport,
    HullReport,
    LcdReport,
    OracleReport,
    QcReport,
    TransformReport,
    TransformStep,
    WitnessReport,
)
from addequiv.models.verdicts import EquivalentToLinear
from addequiv.parser import (
    read_code_file,
    read_linear_file,
    read_qc_file,
    read_witness_file,
    write_code_file,
    write_witness_file,
)
from addequiv.services.addcode import hermitian_lcd, hull
from addequiv.services.distance import BudgetExceeded, min_distance
from addequiv.services.equivtest import run_pipeline, verify_witness
from addequiv.services.oracle import oracle_experiment
from addequiv.services.qcbuilder import build_qc_additive, default_spec, expected_qc_dimension
from addequiv.services.table_service import apply_step, verify_table
from addequiv.utils.errors import AddEquivError, FormatError
from addequiv.utils.helpers import code_parameters, file_digest, verdict_report

logger = logging.getLogger(__name__)


def configure_logging(settings: Settings, level: Optional[str] = None) -> None:
    """Configure the root logger once per invocation."""
    level_name = (level or settings.LOG_LEVEL).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=settings.LOG_FORMAT,
        handlers=[logging.StreamHandler()],
        force=True,
    )


def apply_overrides(settings: Settings, args: argparse.Namespace) -> Settings:
    """
    Settings for this invocation: command-line flags win over the environment.

    Returns a copy; the cached settings are left untouched.
    """
    if args.workers is None:
        return settings
    return settings.model_copy(update={
        "DISTANCE_WORKERS": args.workers,
        "SEARCH_WORKERS": args.workers,
        "TABLE_WORKERS": args.workers,
    })


def emit(args: argparse.Namespace, report: BaseModel, text: str) -> None:
    if args.format == FORMAT_JSON_LINES:
        print(report.model_dump_json())
    else:
        print(text)


# -- commands ------------------------------------------------------------------

def cmd_test(args: argparse.Namespace) -> int:
    code = read_code_file(args.input, allow_rank_deficient=args.allow_rank_deficient)
    verdict, trace = run_pipeline(code, budget=args.budget, workers=args.settings.SEARCH_WORKERS)

    witness_path = None
    if isinstance(verdict, EquivalentToLinear):
        witness_path = args.witness_out or str(Path(args.input).with_suffix(".witness"))
        write_witness_file(verdict, witness_path)
        logger.info(f"Witness written to {witness_path}")

    distance = None
    distance_note = None
    if args.with_distance:
        try:
            distance = min_distance(code, workers=args.settings.DISTANCE_WORKERS)
        except BudgetExceeded as e:
            logger.warning(f"Minimum distance skipped: {e}")
            distance_note = "over budget"
    report = verdict_report(
        code, verdict, trace, file_digest(args.input),
        input_path=args.input, witness_path=witness_path, distance=distance,
    )
    lines = [
        f"{args.input}: {report.parameters.notation}",
        f"  punctured: {trace.punctured or '-'}",
        f"  S shape: {trace.s_shape or '-'}  nullity: {'-' if trace.nullity is None else trace.nullity}",
        f"  verdict: {verdict.tag} ({verdict.describe()})",
    ]
    if distance_note:
        lines.append(f"  distance: {distance_note}")
    if witness_path:
        lines.append(f"  witness: {witness_path}")
    emit(args, report, "\n".join(lines))
    return VERDICT_EXIT_CODES[verdict.tag]


def cmd_qc(args: argparse.Namespace) -> int:
    qc = read_qc_file(args.input)
    code = build_qc_additive(qc)
    output = args.output or str(Path(args.input).with_suffix(".code"))
    write_code_file(code, output)
    report = QcReport(
        input_path=args.input, output_path=output,
        n=code.n, k=code.k, expected_k=expected_qc_dimension(qc),
    )
    emit(args, report, f"{output}: n={code.n} k={code.k}")
    return 0


def cmd_distance(args: argparse.Namespace) -> int:
    code = read_code_file(args.input)
    started = time.perf_counter()
    d = min_distance(code, budget=args.budget, workers=args.settings.DISTANCE_WORKERS)
    report = DistanceReport(
        input_path=args.input,
        input_digest=file_digest(args.input),
        parameters=code_parameters(code, d),
        codewords=code.spec.q ** code.k,
        seconds=round(time.perf_counter() - started, 6),
    )
    emit(args, report, f"{args.input}: d={d} {report.parameters.notation}")
    return 0


def cmd_hull(args: argparse.Namespace) -> int:
    code = read_code_file(args.input)
    _, dimension = hull(code)
    report = HullReport(
        input_path=args.input,
        input_digest=file_digest(args.input),
        parameters=code_parameters(code),
        hull_dimension=dimension,
        acd=dimension == 0,
    )
    emit(args, report, f"{args.input}: hull dimension {dimension}, ACD {str(dimension == 0).lower()}")
    return 0


def cmd_lcd(args: argparse.Namespace) -> int:
    lc = read_linear_file(args.input)
    lcd = hermitian_lcd(lc)
    report = LcdReport(
        input_path=args.input,
        input_digest=file_digest(args.input),
        n=lc.n,
        dimension=lc.dim,
        hermitian_lcd=lcd,
    )
    emit(args, report, f"{args.input}: [{lc.n}, {lc.dim}] Hermitian LCD {str(lcd).lower()}")
    return 0


def cmd_verify_table(args: argparse.Namespace) -> int:
    results, summary = verify_table(args.manifest, budget=args.budget, workers=args.settings.TABLE_WORKERS)
    for result in results:
        detail = "; ".join(result.mismatches) or result.message or ""
        emit(args, result, f"{result.status:<20} {result.label}" + (f"  {detail}" if detail else ""))
    emit(
        args, summary,
        f"{summary.total} rows: {summary.passed} passed, {summary.failed} failed, "
        f"{summary.skipped} skipped, {summary.convention_mismatches} convention mismatches, "
        f"{summary.budget_exceeded} over budget",
    )
    return 0 if summary.ok else 1


def cmd_verify_witness(args: argparse.Namespace) -> int:
    code = read_code_file(args.input)
    witness = read_witness_file(args.witness)
    if witness.spec != code.spec:
        raise FieldMismatch(f"witness field {witness.spec.header()!r} differs from code field {code.spec.header()!r}")
    if witness.n != code.n:
        raise FormatError(f"witness has n={witness.n}, code has n={code.n}", args.witness, 2, 1)

    check = verify_witness(code, witness.R, witness.A_blocks, witness.linear)
    report = WitnessReport(
        input_path=args.input,
        witness_path=args.witness,
        conjugation=check.conjugation,
        quadratic=check.quadratic,
        linear_image=check.linear_image,
        determinants=check.determinants,
        special_linear=all(det == 1 for det in check.determinants),
        valid=check.ok,
    )
    text = (
        f"{args.witness}: conjugation {str(check.conjugation).lower()}, "
        f"quadratic {str(check.quadratic).lower()}, "
        f"linear image {'-' if check.linear_image is None else str(check.linear_image).lower()}, "
        f"det(A_i) = {sorted(set(check.determinants))}"
    )
    emit(args, report, text)
    return 0 if check.ok else 1


def _transform_steps(args: argparse.Namespace) -> List[TransformStep]:
    steps = []
    if args.shorten is not None:
        steps.append(TransformStep(op="shorten", position=args.shorten))
    if args.extend:
        steps.append(TransformStep(op="extend", convention=args.extend_convention))
    if args.augment:
        steps.append(TransformStep(op="augment"))
    return steps


def cmd_transform(args: argparse.Namespace) -> int:
    code: AdditiveCode = read_code_file(args.input)
    steps = _transform_steps(args)
    if not steps:
        logger.warning("No transform requested; writing the code unchanged")
    for step in steps:
        code = apply_step(code, step)
    write_code_file(code, args.output)
    report = TransformReport(
        input_path=args.input,
        output_path=args.output,
        steps=[step.describe() for step in steps],
        parameters=code_parameters(code),
    )
    emit(args, report, f"{args.output}: {report.parameters.notation} via {', '.join(report.steps) or 'identity'}")
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(args.seed)
    result = oracle_experiment(default_spec(), args.samples, rng)
    report = OracleReport(
        seed=args.seed,
        samples=result.samples,
        agreements=result.agreements,
        equivalent=result.equivalent,
        strictly_additive=result.strictly_additive,
        disagreements=result.disagreements,
    )
    emit(
        args, report,
        f"seed {args.seed}: {result.agreements}/{result.samples} agree "
        f"({result.equivalent} equivalent, {result.strictly_additive} strictly additive)",
    )
    return 0 if result.agreements == result.samples else 1


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="addequiv",
        description="Decide whether additive codes over F_{q^2} are equivalent to linear codes",
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument(
        '--format',
        choices=OUTPUT_FORMATS,
        default=FORMAT_TEXT,
        help='Report format (default: text)'
    )
    parser.add_argument(
        '--budget',
        type=int,
        default=None,
        help='Enumeration cap: witness candidates for test/verify-table, codewords for distance'
    )
    parser.add_argument(
        '--seed',
        type=int,
        default=0,
        help='Seed for randomized subcommands (default: 0)'
    )
    parser.add_argument(
        '--log-level',
        default=None,
        help='Log level (default: ADDEQUIV_LOG_LEVEL or WARNING)'
    )
    parser.add_argument(
        '--workers',
        type=int,
        default=None,
        help='Worker threads for distance, witness search and table rows'
    )

    commands = parser.add_subparsers(dest='command', required=True)

    test = commands.add_parser('test', help='Run the linearity test on a code file')
    test.add_argument('input', help='Code file')
    test.add_argument('--witness-out', default=None, help='Witness path (default: <input>.witness)')
    test.add_argument(
        '--allow-rank-deficient',
        action='store_true',
        help='Reduce dependent generator rows instead of rejecting the file'
    )
    test.add_argument('--with-distance', action='store_true', help='Also compute the minimum distance')
    test.set_defaults(handler=cmd_test)

    qc = commands.add_parser('qc', help='Build a code file from a quasi-cyclic spec')
    qc.add_argument('input', help='QC spec file')
    qc.add_argument('-o', '--output', default=None, help='Code file path (default: <input>.code)')
    qc.set_defaults(handler=cmd_qc)

    distance = commands.add_parser('distance', help='Minimum symplectic-pair distance of a code')
    distance.add_argument('input', help='Code file')
    distance.set_defaults(handler=cmd_distance)

    hull_cmd = commands.add_parser('hull', help='Symplectic hull dimension and ACD flag')
    hull_cmd.add_argument('input', help='Code file')
    hull_cmd.set_defaults(handler=cmd_hull)

    lcd = commands.add_parser('lcd', help='Hermitian LCD check of an F_{q^2}-linear code')
    lcd.add_argument('input', help='Linear code file')
    lcd.set_defaults(handler=cmd_lcd)

    table = commands.add_parser('verify-table', help='Reproduce the rows of a manifest')
    table.add_argument('manifest', help='Manifest JSON file')
    table.set_defaults(handler=cmd_verify_table)

    witness = commands.add_parser('verify-witness', help='Re-check a witness file against a code')
    witness.add_argument('input', help='Code file')
    witness.add_argument('witness', help='Witness file')
    witness.set_defaults(handler=cmd_verify_witness)

    transform = commands.add_parser('transform', help='Shorten, extend and/or augment a code')
    transform.add_argument('input', help='Code file')
    transform.add_argument('-o', '--output', required=True, help='Output code file')
    transform.add_argument('--shorten', type=int, default=None, metavar='POS', help='Shorten an ACD code at POS (1-based)')
    transform.add_argument('--extend', action='store_true', help='Append one coordinate')
    transform.add_argument(
        '--extend-convention',
        choices=EXTEND_CONVENTIONS,
        default=EXTEND_SUM,
        help='Extension convention (default: sum)'
    )
    transform.add_argument('--augment', action='store_true', help='Add the all-ones vector and its omega multiple')
    transform.set_defaults(handler=cmd_transform)

    oracle = commands.add_parser('oracle', help='Compare the test with the brute-force oracle on random codes')
    oracle.add_argument('--samples', type=int, default=200, help='Number of random instances (default: 200)')
    oracle.set_defaults(handler=cmd_oracle)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main execution function."""
    parser = build_parser()
    args = parser.parse_args(argv)

    settings = apply_overrides(get_settings(), args)
    configure_logging(settings, args.log_level)
    args.settings = settings

    try:
        return args.handler(args)
    except FormatError as e:
        print(f"error: {e.describe()}", file=sys.stderr)
        return EXIT_FORMAT_ERROR
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BUDGET_EXCEEDED
    except AddEquivError as e:
        logger.debug("Library error", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_LIBRARY_ERROR


if __name__ == "__main__":
    sys.exit(main())
