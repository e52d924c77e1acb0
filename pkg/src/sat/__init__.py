"""
SAT and positive 1-in-k SAT instances, generation and brute-force oracles.
"""

from .rng import SplitMix64, derive_seed
from .instance import (
    Mode,
    Clause,
    SatInstance,
    Assignment,
    generate_instance,
    count_violations,
    violation_vector,
    clauses_for_ratio,
)
from .oracle import brute_force_max_sat, is_satisfiable, sat_probability, crossing_ratio
from .dimacs import read_dimacs, write_dimacs, parse_dimacs, format_dimacs

__all__ = [
    'SplitMix64',
    'derive_seed',
    'Mode',
    'Clause',
    'SatInstance',
    'Assignment',
    'generate_instance',
    'count_violations',
    'violation_vector',
    'clauses_for_ratio',
    'brute_force_max_sat',
    'is_satisfiable',
    'sat_probability',
    'crossing_ratio',
    'read_dimacs',
    'write_dimacs',
    'parse_dimacs',
    'format_dimacs',
]
