"""
Cost Hamiltonians: many-body coefficients, diagonal spectra and coefficient statistics.
"""

from .coefficients import CoefficientTable, IsingTerms, coefficient_table, ising_terms, diag_from_terms
from .cost import (
    CostHamiltonian,
    SymmetricVariant,
    build_cost_hamiltonian,
    build_symmetric_hamiltonian,
    energy,
    energy_violation_excess,
    write_diag,
    read_diag,
)
from .statistics import (
    coefficient_statistics,
    coupling_distribution,
    coupling_moments,
    random_guess_baseline,
)

__all__ = [
    'CoefficientTable',
    'IsingTerms',
    'coefficient_table',
    'ising_terms',
    'diag_from_terms',
    'CostHamiltonian',
    'SymmetricVariant',
    'build_cost_hamiltonian',
    'build_symmetric_hamiltonian',
    'energy',
    'energy_violation_excess',
    'write_diag',
    'read_diag',
    'coefficient_statistics',
    'coupling_distribution',
    'coupling_moments',
    'random_guess_baseline',
]
