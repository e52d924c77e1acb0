"""
Pauli-string algebra and dynamical Lie algebra closures.
"""

from .pauli import PauliString, PauliElement, parse_element, read_generator_file
from .closure import LieClosure, commutator, lie_closure, dim_upper_bound, lower_expectation_report
from .generators import (
    DlaScanPoint,
    qaoa_generators,
    symmetric_generators,
    symmetric_dimension,
    instance_closure,
    dla_scan,
    rank_correlation,
)

__all__ = [
    'PauliString',
    'PauliElement',
    'parse_element',
    'read_generator_file',
    'LieClosure',
    'commutator',
    'lie_closure',
    'dim_upper_bound',
    'lower_expectation_report',
    'DlaScanPoint',
    'qaoa_generators',
    'symmetric_generators',
    'symmetric_dimension',
    'instance_closure',
    'dla_scan',
    'rank_correlation',
]
