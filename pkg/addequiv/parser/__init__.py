"""
Readers and writers for the text file formats (code, QC spec, linear code,
witness) and the JSON batch manifest.
"""
from addequiv.parser.code_file import format_code, parse_code_text, read_code_file, write_code_file
from addequiv.parser.linear_file import parse_linear_text, read_linear_file, write_linear_file
from addequiv.parser.manifest import load_manifest
from addequiv.parser.qc_spec import parse_qc_text, read_qc_file
from addequiv.parser.witness_file import (
    WitnessFile,
    parse_witness_text,
    read_witness_file,
    write_witness_file,
)

__all__ = [
    'WitnessFile',
    'format_code',
    'load_manifest',
    'parse_code_text',
    'parse_linear_text',
    'parse_qc_text',
    'parse_witness_text',
    'read_code_file',
    'read_linear_file',
    'read_qc_file',
    'read_witness_file',
    'write_code_file',
    'write_linear_file',
    'write_witness_file',
]
