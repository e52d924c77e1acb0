"""
Dense Hermitian matrices for the adiabatic gap study and small-n oracles.
"""

import logging
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.linalg import eigh

from ..utils.errors import CapacityError, NotHermitianError

logger = logging.getLogger(__name__)

MAX_DENSE_QUBITS = 12
HERMITIAN_TOLERANCE = 1e-12


class Eigensystem(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


class DenseHermitian:
    def __init__(self, matrix: np.ndarray):
        matrix = np.asarray(matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise NotHermitianError(f"matrix of shape {matrix.shape} is not square")
        if not np.allclose(matrix, matrix.conj().T, atol=HERMITIAN_TOLERANCE, rtol=0.0):
            raise NotHermitianError("matrix differs from its conjugate transpose")
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _check_dense(dim: int) -> None:
    if dim > 1 << MAX_DENSE_QUBITS:
        raise CapacityError("dense matrix dimension", dim, 1 << MAX_DENSE_QUBITS)


def eigendecompose(h: DenseHermitian) -> Eigensystem:
    """Ascending eigenvalues and orthonormal eigenvectors (columns)."""
    _check_dense(h.dim)
    values, vectors = eigh(h.matrix)
    return Eigensystem(values, vectors)


def lowest_eigenvalues(h: DenseHermitian, count: int) -> np.ndarray:
    _check_dense(h.dim)
    count = min(count, h.dim)
    return eigh(h.matrix, eigvals_only=True, subset_by_index=[0, count - 1])


def x_sum_matrix(n: int, weights: Optional[Sequence[float]] = None) -> np.ndarray:
    """sum_i w_i X_i as a dense real matrix."""
    _check_dense(1 << n)
    dim = 1 << n
    matrix = np.zeros((dim, dim), dtype=np.float64)
    index = np.arange(dim)
    for i in range(n):
        w = 1.0 if weights is None else float(weights[i])
        matrix[index, index ^ (1 << i)] += w
    return matrix


def interpolated_hamiltonian(diag: np.ndarray, weights: Sequence[float], s: float) -> DenseHermitian:
    """H(s) = s diag(H_C) + (1 - s) sum_i w_i X_i."""
    n = int(diag.shape[0]).bit_length() - 1
    matrix = (1.0 - s) * x_sum_matrix(n, weights)
    matrix[np.diag_indices_from(matrix)] += s * diag
    return DenseHermitian(matrix)
