"""
Exact arithmetic layer: finite fields, the regular representation of
F_{q^2}, and dense linear algebra over F_q.
"""
from addequiv.core.fieldcore import (
    ExtElem,
    FieldSpec,
    ext_mul,
    make_field_spec,
    regular_repr,
)
from addequiv.core.linalg import GfMatrix, kron, null_space, rref

__all__ = [
    'ExtElem',
    'FieldSpec',
    'GfMatrix',
    'ext_mul',
    'kron',
    'make_field_spec',
    'null_space',
    'regular_repr',
    'rref',
]
