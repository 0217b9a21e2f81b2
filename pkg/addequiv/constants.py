"""
Toolkit-wide constants.

Defines shared constants used across the package to avoid magic strings
and ensure consistency between the library, the file formats and the CLI.
"""

# Verdict tags
VERDICT_STRICTLY_ADDITIVE = "strictly-additive"
"""The code is not monomially equivalent to any F_{q^2}-linear code."""

VERDICT_EQUIVALENT = "equivalent"
"""The code is monomially equivalent to an F_{q^2}-linear code; a witness exists."""

VERDICT_UNDECIDED = "undecided"
"""The null-space search exceeded its budget."""

VERDICT_TAGS = [VERDICT_STRICTLY_ADDITIVE, VERDICT_EQUIVALENT, VERDICT_UNDECIDED]

# Exit codes
EXIT_STRICTLY_ADDITIVE = 0
EXIT_EQUIVALENT = 1
EXIT_UNDECIDED = 2
EXIT_FORMAT_ERROR = 3
EXIT_BUDGET_EXCEEDED = 4
EXIT_LIBRARY_ERROR = 5

VERDICT_EXIT_CODES = {
    VERDICT_STRICTLY_ADDITIVE: EXIT_STRICTLY_ADDITIVE,
    VERDICT_EQUIVALENT: EXIT_EQUIVALENT,
    VERDICT_UNDECIDED: EXIT_UNDECIDED,
}
"""Exit code of `test` as a function of the verdict tag only."""

# Output formats
FORMAT_TEXT = "text"
FORMAT_JSON_LINES = "json-lines"
OUTPUT_FORMATS = [FORMAT_TEXT, FORMAT_JSON_LINES]

# Table verification row statuses
ROW_PASS = "PASS"
ROW_FAIL = "FAIL"
ROW_SKIPPED_NO_DATA = "SKIPPED(no-data)"
ROW_BUDGET_EXCEEDED = "BudgetExceeded"
ROW_CONVENTION_MISMATCH = "CONVENTION-MISMATCH"

TIER_CORE = "core"
"""Rows whose construction is fully determined by the printed data."""

TIER_CONVENTION = "convention"
"""
Rows that depend on the extension/augmentation convention.

A mismatch in this tier is reported as CONVENTION-MISMATCH and does not
fail the batch run.
"""

# Extension conventions
EXTEND_SUM = "sum"
"""Append the F_{q^2}-sum of all coordinates of each codeword."""

EXTEND_BINARY_PARITY = "binary-parity"
"""Append the pair (sum of every bit of the binary image, 0)."""

EXTEND_CONVENTIONS = [EXTEND_SUM, EXTEND_BINARY_PARITY]

# Field element tokens
OMEGA_TOKEN = "w"
"""Prefix of the omega-power tokens used in F_{q^2} matrices (w, w2, w3, ...)."""

# Witness search
SEARCH_CANDIDATE_LIMIT = 2 ** 62
"""Largest usable search budget; candidate ranks are int64."""
