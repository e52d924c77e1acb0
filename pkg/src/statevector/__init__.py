"""
Dense state-vector kernels and dense Hermitian eigensolvers.
"""

from .statevector import (
    StateVector,
    plus_state,
    basis_state,
    apply_diagonal_phase,
    apply_rx_layer,
    apply_pauli,
    expectation_diagonal,
    inner_product,
    measure_distribution,
)
from .dense import DenseHermitian, Eigensystem, eigendecompose, interpolated_hamiltonian, x_sum_matrix

__all__ = [
    'StateVector',
    'plus_state',
    'basis_state',
    'apply_diagonal_phase',
    'apply_rx_layer',
    'apply_pauli',
    'expectation_diagonal',
    'inner_product',
    'measure_distribution',
    'DenseHermitian',
    'Eigensystem',
    'eigendecompose',
    'interpolated_hamiltonian',
    'x_sum_matrix',
]
