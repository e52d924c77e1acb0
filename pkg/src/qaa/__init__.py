"""
Quantum adiabatic algorithm baseline: gaps, anneals and success probabilities.
"""

from .anneal import (
    AnnealSchedule,
    GapMode,
    GapReport,
    QaaResult,
    QaaPoint,
    anneal_initial_state,
    min_gap,
    spectrum_along_path,
    evolve_anneal,
    success_probability,
    qaa_instance,
    qaa_scan,
)

__all__ = [
    'AnnealSchedule',
    'GapMode',
    'GapReport',
    'QaaResult',
    'QaaPoint',
    'anneal_initial_state',
    'min_gap',
    'spectrum_along_path',
    'evolve_anneal',
    'success_probability',
    'qaa_instance',
    'qaa_scan',
]
