"""
Shared line handling for the text formats: comment stripping, key=value
records and field headers, all reporting errors with line and column.
"""
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from addequiv.core.fieldcore import FieldError, FieldSpec, make_field_spec
from addequiv.utils.errors import FormatError

# key=value with no spaces around '='
KEY_VALUE_PATTERN = re.compile(r'(\S+?)=(\S*)')
TOKEN_PATTERN = re.compile(r'\S+')

FIELD_KEYS = ("q", "c0", "c1")


@dataclass(frozen=True)
class SourceLine:
    """A non-blank line with comments removed; number is 1-based."""
    number: int
    text: str

    def tokens(self) -> List[Tuple[int, str]]:
        """(1-based column, token) for every whitespace-separated token."""
        return [(m.start() + 1, m.group()) for m in TOKEN_PATTERN.finditer(self.text)]


def read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FormatError(f"cannot read file: {e.strerror or e}", path=str(path)) from e
    except UnicodeDecodeError as e:
        raise FormatError("file is not UTF-8 text", path=str(path)) from e


def source_lines(text: str) -> List[SourceLine]:
    """Lines with `#` comments stripped, blank lines dropped."""
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split('#', 1)[0].rstrip()
        if body.strip():
            lines.append(SourceLine(number=number, text=body))
    return lines


class LineCursor:
    """Sequential access to source lines with end-of-input errors."""

    def __init__(self, text: str, path: Optional[str]):
        self.lines = source_lines(text)
        self.path = path
        self.index = 0
        self.last_line = len(text.splitlines())

    def at_end(self) -> bool:
        return self.index >= len(self.lines)

    def peek(self) -> Optional[SourceLine]:
        return None if self.at_end() else self.lines[self.index]

    def next(self, expected: str) -> SourceLine:
        if self.at_end():
            raise FormatError(f"unexpected end of file, expected {expected}", self.path, self.last_line + 1, 1)
        line = self.lines[self.index]
        self.index += 1
        return line

    def error(self, message: str, line: SourceLine, column: int = 1) -> FormatError:
        return FormatError(message, self.path, line.number, column)


def parse_key_values(
    cursor: LineCursor,
    line: SourceLine,
    required: Iterable[str],
    optional: Iterable[str] = (),
) -> Dict[str, Tuple[str, int]]:
    """
    Parse `key=value` tokens; returns key -> (value, column).

    Raises:
        FormatError: on malformed tokens, unknown, duplicate or missing keys
    """
    required = list(required)
    allowed = set(required) | set(optional)
    values: Dict[str, Tuple[str, int]] = {}
    for column, token in line.tokens():
        match = KEY_VALUE_PATTERN.fullmatch(token)
        if not match:
            raise cursor.error(f"expected key=value, got {token!r}", line, column)
        key, value = match.groups()
        if key not in allowed:
            raise cursor.error(f"unexpected key {key!r}", line, column)
        if key in values:
            raise cursor.error(f"duplicate key {key!r}", line, column)
        values[key] = (value, column + len(key) + 1)
    missing = [k for k in required if k not in values]
    if missing:
        raise cursor.error(f"missing key(s): {', '.join(missing)}", line, 1)
    return values


def parse_int(cursor: LineCursor, line: SourceLine, text: str, column: int, minimum: int = 0) -> int:
    try:
        value = int(text)
    except ValueError:
        raise cursor.error(f"expected an integer, got {text!r}", line, column) from None
    if value < minimum:
        raise cursor.error(f"expected an integer >= {minimum}, got {value}", line, column)
    return value


def parse_field_header(cursor: LineCursor) -> FieldSpec:
    """`q=<int> c0=<int> c1=<int> [modulus=<int>]`."""
    line = cursor.next("field header q=<int> c0=<int> c1=<int>")
    values = parse_key_values(cursor, line, FIELD_KEYS, optional=("modulus",))
    ints = {key: parse_int(cursor, line, text, column) for key, (text, column) in values.items()}
    try:
        return make_field_spec(ints["q"], ints["c0"], ints["c1"], modulus=ints.get("modulus"))
    except FieldError as e:
        raise cursor.error(str(e), line, 1) from e
    except ValueError as e:
        raise cursor.error(f"invalid field modulus: {e}", line, values["modulus"][1] if "modulus" in values else 1) from e


def parse_dimensions(cursor: LineCursor, keys: Tuple[str, str], what: str) -> Tuple[int, int]:
    """A line `a=<int> b=<int>` such as `n=22 k=20`."""
    line = cursor.next(what)
    values = parse_key_values(cursor, line, keys)
    return tuple(parse_int(cursor, line, *values[key]) for key in keys)


def parse_int_row(cursor: LineCursor, width: int, spec: FieldSpec, what: str) -> List[int]:
    """A line of exactly ``width`` F_q elements."""
    line = cursor.next(what)
    tokens = line.tokens()
    if len(tokens) != width:
        column = tokens[width][0] if len(tokens) > width else len(line.text) + 1
        raise cursor.error(f"expected {width} entries, got {len(tokens)}", line, column)
    row = []
    for column, token in tokens:
        value = parse_int(cursor, line, token, column)
        if value >= spec.q:
            raise cursor.error(f"{value} is not an element of F_{spec.q}", line, column)
        row.append(value)
    return row
