"""
Shioda Toolkit Algebra Package
"""

from .errors import InternalInconsistencyError, ShiodaInputError
from .shioda_core import ExponentMatrix, ShiodaData, analyze, check_cy
from .quotient_groups import compute_groups
from .monomial_maps import construct_inverse, fingerprint, mbar_equations, verify_inverse

__all__ = [
    'ShiodaInputError', 'InternalInconsistencyError',
    'ExponentMatrix', 'ShiodaData', 'analyze', 'check_cy',
    'compute_groups',
    'mbar_equations', 'construct_inverse', 'verify_inverse', 'fingerprint',
]
