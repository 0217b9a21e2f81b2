"""
Tests for the text formats and the manifest loader.
"""
import json

import pytest

from addequiv.core.fieldcore import ExtElem, make_field_spec
from addequiv.core.linalg import GfMatrix
from addequiv.parser import (
    format_code,
    load_manifest,
    parse_code_text,
    parse_linear_text,
    parse_qc_text,
    parse_witness_text,
)
from addequiv.parser.linear_file import format_ext_token, format_linear, parse_ext_token
from addequiv.parser.manifest import resolve_source
from addequiv.parser.qc_spec import format_qc
from addequiv.parser.witness_file import format_witness
from addequiv.utils.errors import FormatError
from tests.helpers import matrix

HEADER = "q=2 c0=1 c1=1\n"


def format_error(parse, text):
    with pytest.raises(FormatError) as exc:
        parse(text, "input.txt")
    return exc.value


class TestCodeFile:
    """Tests for the code file grammar."""

    def test_parse(self):
        """Header, dimensions and rows."""
        code = parse_code_text(HEADER + "n=2 k=2\n1 0 0 1\n0 1 1 1\n")
        assert (code.n, code.k) == (2, 2)
        assert code.G.entries.tolist() == [[1, 0, 0, 1], [0, 1, 1, 1]]

    def test_comments_and_blank_lines(self):
        """`#` comments and blank lines are skipped."""
        code = parse_code_text("# comment\n\n" + "q=2 c0=1 c1=1  # field\nn=1 k=1\n\n1 0\n")
        assert code.G.entries.tolist() == [[1, 0]]

    def test_format_round_trip(self, gf16, rng):
        """format_code output parses back to the same generator."""
        from addequiv.services.addcode import random_code

        code = random_code(gf16, 3, 4, rng)
        parsed = parse_code_text(format_code(code))
        assert parsed.spec == gf16
        assert parsed.G == code.G

    def test_empty(self):
        """An empty file is an error at 1:1."""
        error = format_error(parse_code_text, "# nothing\n")
        assert (error.line, error.column) == (1, 1)

    def test_short_row(self):
        """A missing entry is reported past the end of the row."""
        error = format_error(parse_code_text, HEADER + "n=2 k=1\n1 0 1\n")
        assert (error.line, error.column) == (3, 6)
        assert error.describe() == "input.txt:3:6: expected 4 entries, got 3"

    def test_long_row(self):
        """The first surplus token is reported."""
        error = format_error(parse_code_text, HEADER + "n=2 k=1\n1 0 1 1 1\n")
        assert (error.line, error.column) == (3, 9)

    def test_entry_outside_field(self):
        """2 is not an element of F_2."""
        error = format_error(parse_code_text, HEADER + "n=2 k=1\n1 0 2 1\n")
        assert (error.line, error.column) == (3, 5)

    def test_missing_rows(self):
        """Running out of rows is reported after the last line."""
        error = format_error(parse_code_text, HEADER + "n=2 k=2\n1 0 0 1\n")
        assert error.line == 4
        assert "row 2 of 2" in error.message

    def test_extra_content(self):
        """Lines after the last row are rejected."""
        error = format_error(parse_code_text, HEADER + "n=1 k=1\n1 0\n0 1\n")
        assert error.line == 4

    def test_k_exceeds_2n(self):
        """k = 3 rows cannot be independent in F_2^2."""
        error = format_error(parse_code_text, HEADER + "n=1 k=3\n")
        assert error.line == 2

    def test_dependent_rows(self):
        """Dependent rows are rejected unless reduction is allowed."""
        text = HEADER + "n=2 k=2\n1 0 0 1\n1 0 0 1\n"
        error = format_error(parse_code_text, text)
        assert error.line == 2
        assert parse_code_text(text, allow_rank_deficient=True).k == 1

    def test_bad_header(self):
        """Field validation errors point at the header line."""
        assert format_error(parse_code_text, "q=6 c0=1 c1=1\nn=1 k=0\n").line == 1
        assert format_error(parse_code_text, "q=2 c0=1\nn=1 k=0\n").line == 1

    def test_unknown_header_key(self):
        """The column of an unexpected key is reported."""
        error = format_error(parse_code_text, "q=2 c0=1 c1=1 p=3\nn=1 k=0\n")
        assert (error.line, error.column) == (1, 15)


class TestQcFile:
    """Tests for the quasi-cyclic spec grammar."""

    def test_parse(self):
        """Exponent lists become polynomials; an empty list is zero."""
        qc = parse_qc_text("n=5\ng=0\nf0=1,3\nf1=\n")
        assert qc.n == 5
        assert qc.f0.exponents() == [1, 3]
        assert qc.f1.is_zero()

    def test_shipped_spec(self, qc_22):
        """The [22, 10, 9] spec lists g = 1 + x^2."""
        assert qc_22.n == 22
        assert qc_22.g.exponents() == [0, 2]
        assert qc_22.f0.exponents() == [0, 2, 10, 11, 14, 19]

    def test_format_round_trip(self, qc_63):
        """format_qc output parses back to the same polynomials."""
        parsed = parse_qc_text(format_qc(qc_63))
        assert parsed.n == qc_63.n
        for key in ("g", "f0", "f1"):
            assert getattr(parsed, key) == getattr(qc_63, key)

    def test_missing_key(self):
        """Every key must appear."""
        error = format_error(parse_qc_text, "n=5\ng=0\nf0=1\n")
        assert "f1=" in error.message

    def test_unknown_key(self):
        """Only n, g, f0 and f1 are accepted."""
        error = format_error(parse_qc_text, "n=5\nh=0\n")
        assert (error.line, error.column) == (2, 1)

    def test_duplicate_key(self):
        """A key may appear once."""
        error = format_error(parse_qc_text, "n=5\ng=0\ng=1\nf0=1\nf1=\n")
        assert error.line == 3

    def test_bad_exponent(self):
        """A non-integer exponent is located by column."""
        error = format_error(parse_qc_text, "n=5\ng=0,x\nf0=1\nf1=\n")
        assert (error.line, error.column) == (2, 5)

    def test_empty_exponent(self):
        """`0,,1` has an empty entry."""
        error = format_error(parse_qc_text, "n=5\ng=0,,1\nf0=1\nf1=\n")
        assert (error.line, error.column) == (2, 5)

    def test_zero_length(self):
        """n must be positive."""
        error = format_error(parse_qc_text, "n=0\ng=0\nf0=1\nf1=\n")
        assert error.line == 1


class TestLinearFile:
    """Tests for F_{q^2} tokens and the linear code grammar."""

    def test_tokens(self, gf4):
        """w, w2, pairs and plain integers."""
        assert parse_ext_token("w", gf4) == gf4.omega
        assert parse_ext_token("w2", gf4) == ExtElem(1, 1, gf4)
        assert parse_ext_token("w3", gf4) == gf4.one
        assert parse_ext_token("1:1", gf4) == ExtElem(1, 1, gf4)
        assert parse_ext_token("0", gf4) == gf4.zero

    @pytest.mark.parametrize("token", ["x", "2", "1:2", "w-1", ""])
    def test_bad_tokens(self, gf4, token):
        """Malformed tokens and non-elements raise ValueError."""
        with pytest.raises(ValueError):
            parse_ext_token(token, gf4)

    def test_format_tokens(self, gf4):
        """Primitive omega prints as powers."""
        assert format_ext_token(gf4.zero) == "0"
        assert format_ext_token(gf4.one) == "1"
        assert format_ext_token(gf4.omega) == "w"
        assert format_ext_token(ExtElem(1, 1, gf4)) == "w2"

    def test_format_non_primitive(self):
        """Without a primitive omega, pairs are printed."""
        spec = make_field_spec(3, 1, 0)
        assert format_ext_token(ExtElem(1, 2, spec)) == "1:2"
        assert format_ext_token(ExtElem(2, 0, spec)) == "2"

    def test_every_element_round_trips(self, gf9):
        """format_ext_token and parse_ext_token are inverse on F_9."""
        for z in gf9.elements():
            assert parse_ext_token(format_ext_token(z), gf9) == z

    def test_printed_matrix(self, printed_linear_22):
        """The printed generator has a systematic left half."""
        lc = printed_linear_22
        assert (lc.n, lc.dim) == (22, 10)
        for r, row in enumerate(lc.rows):
            assert [z.is_zero() for z in row[:10]] == [c != r for c in range(10)]

    def test_format_round_trip(self, printed_linear_22):
        """format_linear output parses back to the same rows."""
        parsed = parse_linear_text(format_linear(printed_linear_22))
        assert parsed.rows == printed_linear_22.rows

    def test_bad_token_location(self):
        """A bad token is located by line and column."""
        error = format_error(parse_linear_text, HEADER + "n=3 m=1\n1 w q\n")
        assert (error.line, error.column) == (3, 5)


class TestWitnessFile:
    """Tests for the witness grammar."""

    def test_printed_witness(self, printed_witness_22, gf4):
        """Identity blocks on odd coordinates, swaps on even ones."""
        witness = printed_witness_22
        assert (witness.n, witness.k) == (22, 20)
        assert witness.R is None
        assert witness.linear is None
        swap = matrix(gf4, [[0, 1], [1, 0]])
        for i, block in enumerate(witness.A_blocks, start=1):
            assert block == (swap if i % 2 == 0 else GfMatrix.identity(gf4, 2))

    def test_round_trip(self, gf4, printed_linear_22):
        """R, blocks and the LINEAR section survive format/parse."""
        R = GfMatrix.identity(gf4, 2)
        blocks = [matrix(gf4, [[0, 1], [1, 1]]) for _ in range(22)]
        text = format_witness(gf4, blocks, R, printed_linear_22)
        witness = parse_witness_text(text)
        assert witness.R == R
        assert witness.A_blocks == blocks
        assert witness.linear.rows == printed_linear_22.rows

    def test_missing_block(self):
        """Every coordinate needs its block."""
        error = format_error(parse_witness_text, HEADER + "n=2 k=2\nA 1\n1 0\n0 1\n")
        assert "[2]" in error.message

    def test_duplicate_block(self):
        """A block index may appear once."""
        text = HEADER + "n=2 k=2\nA 1\n1 0\n0 1\nA 1\n1 0\n0 1\n"
        error = format_error(parse_witness_text, text)
        assert (error.line, error.column) == (6, 3)

    def test_block_index_out_of_range(self):
        """Indices are 1..n."""
        error = format_error(parse_witness_text, HEADER + "n=1 k=2\nA 2\n1 0\n0 1\n")
        assert error.line == 3

    def test_linear_length_mismatch(self):
        """The LINEAR section must match n."""
        text = HEADER + "n=1 k=2\nA 1\n1 0\n0 1\nLINEAR n=2 m=1\n1 w\n"
        error = format_error(parse_witness_text, text)
        assert error.line == 6

    def test_unknown_section(self):
        """Only R, A <i> and LINEAR are sections."""
        error = format_error(parse_witness_text, HEADER + "n=1 k=2\nB 1\n")
        assert error.line == 3


class TestManifest:
    """Tests for manifest loading and validation."""

    def test_shipped_manifest(self, data_dir):
        """The shipped manifest lists 24 rows, three with data."""
        manifest = load_manifest(data_dir / "manifests" / "tables.json")
        assert len(manifest.rows) == 24
        assert sum(1 for row in manifest.rows if row.source is not None) == 3

    def test_invalid_json(self, tmp_path):
        """JSON syntax errors carry line and column."""
        path = tmp_path / "bad.json"
        path.write_text('{\n  "rows": [\n}\n')
        with pytest.raises(FormatError) as exc:
            load_manifest(path)
        assert exc.value.line == 3

    def test_schema_violation(self, tmp_path):
        """A shorten step without a position is rejected."""
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"rows": [{"label": "x", "transforms": [{"op": "shorten"}]}]}))
        with pytest.raises(FormatError) as exc:
            load_manifest(path)
        assert "rows.0.transforms.0" in exc.value.message

    def test_unknown_verdict(self, tmp_path):
        """Expected verdicts must be known tags."""
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"rows": [{"label": "x", "expect": {"verdict": "maybe"}}]}))
        with pytest.raises(FormatError):
            load_manifest(path)

    def test_resolve_source(self, tmp_path):
        """Relative sources resolve against the manifest directory."""
        manifest = tmp_path / "m" / "tables.json"
        assert resolve_source(manifest, "../qc/a.qc") == tmp_path / "m" / ".." / "qc" / "a.qc"
        assert resolve_source(manifest, str(tmp_path / "b.qc")) == tmp_path / "b.qc"

    def test_missing_file(self, tmp_path):
        """An unreadable manifest is a format error."""
        with pytest.raises(FormatError):
            load_manifest(tmp_path / "absent.json")
