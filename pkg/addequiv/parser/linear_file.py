"""
F_{q^2} matrix tokens and the linear code file format.

    q=<int> c0=<int> c1=<int> [modulus=<int>]
    n=<int> m=<int>
    <m lines of n tokens>

A token is an F_q element `<int>` (meaning <int> + 0*omega), an omega power
`w` or `w<i>`, or an explicit pair `<a>:<b>` meaning a + b*omega.
"""
import re
from pathlib import Path
from typing import List, Optional

from addequiv.constants import OMEGA_TOKEN
from addequiv.core.fieldcore import ExtElem, FieldSpec, elem_from_power
from addequiv.models.codes import LinearCodeExt
from addequiv.parser.common import (
    LineCursor,
    parse_dimensions,
    parse_field_header,
    read_text,
)
from addequiv.utils.errors import FormatError

OMEGA_POWER_PATTERN = re.compile(rf'{OMEGA_TOKEN}(\d*)')
PAIR_PATTERN = re.compile(r'(\d+):(\d+)')
INT_PATTERN = re.compile(r'\d+')


def parse_ext_token(token: str, spec: FieldSpec) -> ExtElem:
    """
    Decode one token.

    Raises:
        ValueError: if the token is malformed or names a non-element
    """
    match = OMEGA_POWER_PATTERN.fullmatch(token)
    if match:
        exponent = int(match.group(1)) if match.group(1) else 1
        return elem_from_power(spec, exponent)
    match = PAIR_PATTERN.fullmatch(token)
    if match:
        a, b = (int(g) for g in match.groups())
    elif INT_PATTERN.fullmatch(token):
        a, b = int(token), 0
    else:
        raise ValueError(f"unrecognized F_{spec.q ** 2} token {token!r}")
    if a >= spec.q or b >= spec.q:
        raise ValueError(f"{token!r} has a coordinate outside F_{spec.q}")
    return ExtElem(a, b, spec)


def format_ext_token(z: ExtElem) -> str:
    """`0`, `1`, `w`, `w<i>` when omega is primitive; `<a>` or `<a>:<b>` otherwise."""
    spec = z.spec
    if z.is_zero():
        return "0"
    if spec.is_primitive:
        power = spec.omega_log[(z.a, z.b)]
        if power == 0:
            return "1"
        return OMEGA_TOKEN if power == 1 else f"{OMEGA_TOKEN}{power}"
    if z.b == 0:
        return str(z.a)
    return f"{z.a}:{z.b}"


def parse_ext_rows(cursor: LineCursor, spec: FieldSpec, n: int, m: int) -> List[List[ExtElem]]:
    rows = []
    for r in range(m):
        line = cursor.next(f"row {r + 1} of {m}")
        tokens = line.tokens()
        if len(tokens) != n:
            column = tokens[n][0] if len(tokens) > n else len(line.text) + 1
            raise cursor.error(f"expected {n} entries, got {len(tokens)}", line, column)
        row = []
        for column, token in tokens:
            try:
                row.append(parse_ext_token(token, spec))
            except ValueError as e:
                raise cursor.error(str(e), line, column) from None
        rows.append(row)
    return rows


def parse_linear_text(text: str, path: Optional[str] = None) -> LinearCodeExt:
    """
    Parse a linear code file.

    Raises:
        FormatError: on any grammar violation
    """
    cursor = LineCursor(text, path)
    if cursor.at_end():
        raise FormatError("empty file, expected field header", path, 1, 1)
    spec = parse_field_header(cursor)
    n, m = parse_dimensions(cursor, ("n", "m"), "dimensions n=<int> m=<int>")
    rows = parse_ext_rows(cursor, spec, n, m)
    extra = cursor.peek()
    if extra is not None:
        raise cursor.error(f"unexpected content after {m} rows", extra)
    return LinearCodeExt(spec=spec, n=n, rows=tuple(tuple(r) for r in rows))


def read_linear_file(path) -> LinearCodeExt:
    return parse_linear_text(read_text(path), str(path))


def format_ext_rows(lc: LinearCodeExt) -> List[str]:
    return [" ".join(format_ext_token(z) for z in row) for row in lc.rows]


def format_linear(lc: LinearCodeExt) -> str:
    lines = [lc.spec.header(), f"n={lc.n} m={lc.dim}"] + format_ext_rows(lc)
    return "\n".join(lines) + "\n"


def write_linear_file(lc: LinearCodeExt, path) -> None:
    Path(path).write_text(format_linear(lc), encoding="utf-8")
