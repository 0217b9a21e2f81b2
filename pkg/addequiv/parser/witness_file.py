"""
Witness file format.

    q=<int> c0=<int> c1=<int> [modulus=<int>]
    n=<int> k=<int>
    R                          (optional section)
    <k lines of k F_q elements>
    A <i>                      (one section per coordinate i = 1..n)
    <2 lines of 2 F_q elements>
    LINEAR n=<int> m=<int>     (optional section)
    <m lines of n F_{q^2} tokens>
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from addequiv.core.fieldcore import FieldSpec
from addequiv.core.linalg import GfMatrix
from addequiv.models.codes import LinearCodeExt
from addequiv.models.verdicts import EquivalentToLinear
from addequiv.parser.common import (
    LineCursor,
    SourceLine,
    parse_dimensions,
    parse_field_header,
    parse_int,
    parse_int_row,
    parse_key_values,
    read_text,
)
from addequiv.parser.linear_file import format_ext_rows, parse_ext_rows
from addequiv.utils.errors import FormatError

SECTION_R = "R"
SECTION_A = "A"
SECTION_LINEAR = "LINEAR"


@dataclass
class WitnessFile:
    spec: FieldSpec
    n: int
    k: int
    A_blocks: List[GfMatrix] = field(repr=False)
    R: Optional[GfMatrix] = field(default=None, repr=False)
    linear: Optional[LinearCodeExt] = field(default=None, repr=False)


def parse_witness_text(text: str, path: Optional[str] = None) -> WitnessFile:
    """
    Parse a witness file.

    Raises:
        FormatError: on grammar violations, repeated or missing A blocks
    """
    cursor = LineCursor(text, path)
    if cursor.at_end():
        raise FormatError("empty file, expected field header", path, 1, 1)
    spec = parse_field_header(cursor)
    n, k = parse_dimensions(cursor, ("n", "k"), "dimensions n=<int> k=<int>")

    R = None
    blocks: Dict[int, GfMatrix] = {}
    linear = None
    while not cursor.at_end():
        line = cursor.next("")
        tokens = line.tokens()
        head = tokens[0][1]
        if head == SECTION_R and len(tokens) == 1:
            if R is not None:
                raise cursor.error("duplicate R section", line)
            rows = [parse_int_row(cursor, k, spec, f"row {r + 1} of R") for r in range(k)]
            R = GfMatrix.from_array(spec, np.array(rows, dtype=np.uint8).reshape(k, k), validate=False)
        elif head == SECTION_A and len(tokens) == 2:
            index = parse_int(cursor, line, tokens[1][1], tokens[1][0], minimum=1)
            if index > n:
                raise cursor.error(f"block index {index} outside 1..{n}", line, tokens[1][0])
            if index in blocks:
                raise cursor.error(f"duplicate block A {index}", line, tokens[1][0])
            rows = [parse_int_row(cursor, 2, spec, f"row {r + 1} of A {index}") for r in range(2)]
            blocks[index] = GfMatrix.from_array(spec, rows, validate=False)
        elif head == SECTION_LINEAR:
            if linear is not None:
                raise cursor.error("duplicate LINEAR section", line)
            end = tokens[0][0] - 1 + len(SECTION_LINEAR)
            keys_only = SourceLine(number=line.number, text=" " * end + line.text[end:])
            values = parse_key_values(cursor, keys_only, ("n", "m"))
            ln, lm = (parse_int(cursor, line, *values[key]) for key in ("n", "m"))
            if ln != n:
                raise cursor.error(f"LINEAR section has n={ln}, expected {n}", line)
            rows = parse_ext_rows(cursor, spec, ln, lm)
            linear = LinearCodeExt(spec=spec, n=ln, rows=tuple(tuple(r) for r in rows))
        else:
            raise cursor.error(f"expected 'R', 'A <i>' or 'LINEAR n=<int> m=<int>', got {line.text.strip()!r}", line)

    missing = [i for i in range(1, n + 1) if i not in blocks]
    if missing:
        raise FormatError(f"missing A block(s): {missing[:10]}", path, cursor.last_line + 1, 1)
    return WitnessFile(
        spec=spec, n=n, k=k, A_blocks=[blocks[i] for i in range(1, n + 1)], R=R, linear=linear
    )


def read_witness_file(path) -> WitnessFile:
    return parse_witness_text(read_text(path), str(path))


def format_witness(
    spec: FieldSpec,
    A_blocks: List[GfMatrix],
    R: Optional[GfMatrix] = None,
    linear: Optional[LinearCodeExt] = None,
    k: int = 0,
) -> str:
    if R is not None:
        k = R.rows
    lines = [spec.header(), f"n={len(A_blocks)} k={k}"]
    if R is not None:
        lines.append(SECTION_R)
        lines.extend(" ".join(str(int(v)) for v in row) for row in R.entries)
    for i, block in enumerate(A_blocks, start=1):
        lines.append(f"{SECTION_A} {i}")
        lines.extend(" ".join(str(int(v)) for v in row) for row in block.entries)
    if linear is not None:
        lines.append(f"{SECTION_LINEAR} n={linear.n} m={linear.dim}")
        lines.extend(format_ext_rows(linear))
    return "\n".join(lines) + "\n"


def write_witness_file(verdict: EquivalentToLinear, path) -> None:
    """Write R, every A_i and the linear generator of an equivalence verdict."""
    text = format_witness(verdict.R.spec, verdict.A_blocks, verdict.R, verdict.linear_generator)
    Path(path).write_text(text, encoding="utf-8")
