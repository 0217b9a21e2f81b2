"""
Quasi-cyclic spec format.

    n=<int>
    g=<exponent>,<exponent>,...
    f0=<exponent>,...
    f1=<exponent>,...

Each polynomial line lists the exponents with coefficient 1; an empty list
is the zero polynomial. `#` starts a comment.
"""
import re
from typing import Dict, List, Optional

from addequiv.parser.common import LineCursor, SourceLine, parse_int, read_text
from addequiv.services.qcbuilder import PolyModXn, QcSpec
from addequiv.utils.errors import FormatError

QC_LINE_PATTERN = re.compile(r'\s*(\w+)\s*=\s*(.*?)\s*$')
QC_KEYS = ("n", "g", "f0", "f1")


def _parse_exponents(cursor: LineCursor, line: SourceLine, body: str, offset: int) -> List[int]:
    exponents = []
    if not body:
        return exponents
    position = offset
    for part in body.split(','):
        token = part.strip()
        column = position + (len(part) - len(part.lstrip()))
        if not token:
            raise cursor.error("empty exponent in list", line, column)
        exponents.append(parse_int(cursor, line, token, column))
        position += len(part) + 1
    return exponents


def parse_qc_text(text: str, path: Optional[str] = None) -> QcSpec:
    """
    Parse a QC spec.

    Raises:
        FormatError: on malformed lines, unknown/duplicate keys or a missing key
    """
    cursor = LineCursor(text, path)
    if cursor.at_end():
        raise FormatError("empty file, expected n=<int>", path, 1, 1)
    raw: Dict[str, tuple] = {}
    while not cursor.at_end():
        line = cursor.next("")
        match = QC_LINE_PATTERN.fullmatch(line.text)
        if not match:
            raise cursor.error("expected <key>=<value>", line, 1)
        key, body = match.groups()
        if key not in QC_KEYS:
            raise cursor.error(f"unexpected key {key!r}; expected one of {', '.join(QC_KEYS)}", line, match.start(1) + 1)
        if key in raw:
            raise cursor.error(f"duplicate key {key!r}", line, match.start(1) + 1)
        raw[key] = (line, body, match.start(2) + 1)

    missing = [key for key in QC_KEYS if key not in raw]
    if missing:
        raise FormatError(f"missing line(s): {', '.join(k + '=' for k in missing)}", path, cursor.last_line + 1, 1)

    n_line, n_body, n_column = raw["n"]
    n = parse_int(cursor, n_line, n_body, n_column, minimum=1)
    polys = {
        key: PolyModXn.from_exponents(n, _parse_exponents(cursor, *raw[key]))
        for key in ("g", "f0", "f1")
    }
    return QcSpec(n=n, **polys)


def read_qc_file(path) -> QcSpec:
    return parse_qc_text(read_text(path), str(path))


def format_qc(qc: QcSpec) -> str:
    lines = [f"n={qc.n}"]
    for key in ("g", "f0", "f1"):
        lines.append(f"{key}=" + ",".join(str(e) for e in getattr(qc, key).exponents()))
    return "\n".join(lines) + "\n"
