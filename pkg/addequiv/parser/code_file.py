"""
Code file format.

    q=<int> c0=<int> c1=<int> [modulus=<int>]
    n=<int> k=<int>
    <k lines of 2n F_q elements>

`#` starts a comment; blank lines are ignored.
"""
import logging
from pathlib import Path
from typing import Optional

import numpy as np

from addequiv.core.linalg import GfMatrix, rank
from addequiv.models.codes import AdditiveCode
from addequiv.parser.common import (
    LineCursor,
    parse_dimensions,
    parse_field_header,
    parse_int_row,
    read_text,
)
from addequiv.utils.errors import FormatError

logger = logging.getLogger(__name__)


def parse_code_text(
    text: str,
    path: Optional[str] = None,
    allow_rank_deficient: bool = False,
) -> AdditiveCode:
    """
    Parse a code file body.

    Args:
        text: File contents
        path: Path used in error messages
        allow_rank_deficient: Reduce dependent rows to a basis instead of failing

    Raises:
        FormatError: on any grammar violation, or dependent rows when not allowed
    """
    cursor = LineCursor(text, path)
    if cursor.at_end():
        raise FormatError("empty file, expected field header", path, 1, 1)
    spec = parse_field_header(cursor)
    dims_line = cursor.peek()
    n, k = parse_dimensions(cursor, ("n", "k"), "dimensions n=<int> k=<int>")
    if k > 2 * n:
        raise cursor.error(f"k = {k} exceeds 2n = {2 * n}", dims_line)
    rows = [parse_int_row(cursor, 2 * n, spec, f"generator row {r + 1} of {k}") for r in range(k)]
    extra = cursor.peek()
    if extra is not None:
        raise cursor.error(f"unexpected content after {k} generator rows", extra)

    G = GfMatrix.from_array(spec, np.array(rows, dtype=np.uint8).reshape(k, 2 * n), validate=False)
    r = rank(G) if k else 0
    if r < k:
        if not allow_rank_deficient:
            raise cursor.error(
                f"generator rows are dependent (rank {r} < k = {k}); "
                f"use --allow-rank-deficient to reduce them",
                dims_line,
            )
        return AdditiveCode.from_matrix(spec, G)
    return AdditiveCode(spec=spec, n=n, G=G)


def read_code_file(path, allow_rank_deficient: bool = False) -> AdditiveCode:
    return parse_code_text(read_text(path), str(path), allow_rank_deficient)


def format_code(code: AdditiveCode) -> str:
    lines = [code.spec.header(), f"n={code.n} k={code.k}"]
    lines.extend(" ".join(str(int(v)) for v in row) for row in code.G.entries)
    return "\n".join(lines) + "\n"


def write_code_file(code: AdditiveCode, path) -> None:
    Path(path).write_text(format_code(code), encoding="utf-8")
    logger.info(f"Wrote {code!r} to {path}")
