"""
Pytest configuration and fixtures for testing.
"""
import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
TESTS_DIR = Path(__file__).resolve().parent
PROJECT_DIR = TESTS_DIR.parent
sys.path.insert(0, str(PROJECT_DIR))

DATA_DIR = PROJECT_DIR / "data"

from addequiv.core.fieldcore import make_field_spec
from addequiv.parser import read_linear_file, read_qc_file, read_witness_file
from addequiv.services.qcbuilder import build_qc_additive


@pytest.fixture(scope="session")
def gf4():
    """F_4 over F_2 with omega^2 + omega + 1 = 0."""
    return make_field_spec(2, 1, 1)


@pytest.fixture(scope="session")
def gf9():
    """F_9 over F_3 with omega^2 + omega + 2 = 0 (omega primitive)."""
    return make_field_spec(3, 2, 1)


@pytest.fixture(scope="session")
def gf16():
    """F_16 over F_4 with omega^2 + omega + alpha = 0."""
    return make_field_spec(4, 2, 1)


@pytest.fixture(scope="function")
def rng():
    """Seeded generator so randomized suites are reproducible."""
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def qc_63():
    return read_qc_file(DATA_DIR / "qc" / "example_63.qc")


@pytest.fixture(scope="session")
def qc_22():
    return read_qc_file(DATA_DIR / "qc" / "acd_22.qc")


@pytest.fixture(scope="session")
def code_63(qc_63):
    """The [63, 5, 45] quasi-cyclic additive code."""
    return build_qc_additive(qc_63)


@pytest.fixture(scope="session")
def code_22(qc_22):
    """The [22, 10, 9] ACD quasi-cyclic additive code."""
    return build_qc_additive(qc_22)


@pytest.fixture(scope="session")
def printed_linear_22():
    """The printed 10 x 22 generator matrix over F_4."""
    return read_linear_file(DATA_DIR / "codes" / "hermitian_lcd_22.lin")


@pytest.fixture(scope="session")
def printed_witness_22():
    """Identity blocks on odd coordinates, swaps on even ones."""
    return read_witness_file(DATA_DIR / "witnesses" / "acd_22_printed.witness")

