"""
Dense 2**n-amplitude state engine.

Qubit i is bit i of the basis index; bit value 1 is |1>, sigma_z = -1.
Kernels act in place on arrays of shape (2**n,) or (2**n, batch), so the
same code serves single states and basis-state batches.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from ..dla.pauli import PauliString
from ..utils.errors import CapacityError, DimensionError, InvalidDimensionError

logger = logging.getLogger(__name__)

MAX_QUBITS = 26
NORM_TOLERANCE = 1e-10


class StateVector:
    """Exclusively owned, mutable state; operations modify ``amps`` in place."""

    def __init__(self, amps: np.ndarray):
        amps = np.ascontiguousarray(amps, dtype=np.complex128)
        if amps.ndim != 1:
            raise DimensionError("amplitudes must be a 1-D vector")
        dim = amps.shape[0]
        n = dim.bit_length() - 1
        if dim < 2 or 1 << n != dim:
            raise DimensionError(f"amplitude count {dim} is not a power of two")
        self.amps = amps
        self.n = n

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    def copy(self) -> "StateVector":
        return StateVector(self.amps.copy())

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def __repr__(self) -> str:
        return f"StateVector(n={self.n})"


def _check_qubits(n: int) -> None:
    if n < 1:
        raise InvalidDimensionError(f"need at least one qubit, got {n}")
    if n > MAX_QUBITS:
        raise CapacityError("state vector qubits", n, MAX_QUBITS)


def plus_state(n: int) -> StateVector:
    """|+>^n, the uniform superposition."""
    _check_qubits(n)
    return StateVector(np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128))


def basis_state(n: int, index: int) -> StateVector:
    _check_qubits(n)
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps)


def _as_batch(array: np.ndarray) -> np.ndarray:
    return array.reshape(array.shape[0], -1)


def _check_dim(array: np.ndarray, vector: np.ndarray) -> None:
    if array.shape[0] != vector.shape[0]:
        raise DimensionError(f"state has {array.shape[0]} amplitudes, operand has {vector.shape[0]}")


def diagonal_phase_array(array: np.ndarray, diag: np.ndarray, gamma: float) -> np.ndarray:
    """amps[z] <- exp(-i gamma diag[z]) amps[z], in place."""
    _check_dim(array, diag)
    phase = np.exp(-1j * gamma * diag)
    batch = _as_batch(array)
    batch *= phase[:, None]
    return array


def rx_layer_array(array: np.ndarray, n: int, beta: float,
                   weights: Optional[Sequence[float]] = None) -> np.ndarray:
    """Apply prod_i exp(-i beta w_i X_i) by one stride-2**i butterfly per qubit, in place."""
    if array.shape[0] != 1 << n:
        raise DimensionError(f"state has {array.shape[0]} amplitudes, expected {1 << n}")
    if weights is not None and len(weights) != n:
        raise DimensionError(f"expected {n} mixing weights, got {len(weights)}")
    batch = _as_batch(array)
    width = batch.shape[1]
    for i in range(n):
        angle = beta * (1.0 if weights is None else float(weights[i]))
        if angle == 0.0:
            continue
        c, s = np.cos(angle), np.sin(angle)
        view = batch.reshape(1 << (n - 1 - i), 2, 1 << i, width)
        low = view[:, 0].copy()
        view[:, 0] = c * low - 1j * s * view[:, 1]
        view[:, 1] = c * view[:, 1] - 1j * s * low
    return array


def x_sum_array(array: np.ndarray, n: int, weights: Optional[Sequence[float]] = None) -> np.ndarray:
    """Return (sum_i w_i X_i) applied to the array (new array)."""
    batch = _as_batch(array)
    out = np.zeros_like(batch)
    width = batch.shape[1]
    for i in range(n):
        w = 1.0 if weights is None else float(weights[i])
        if w == 0.0:
            continue
        src = batch.reshape(1 << (n - 1 - i), 2, 1 << i, width)
        dst = out.reshape(1 << (n - 1 - i), 2, 1 << i, width)
        dst[:, 0] += w * src[:, 1]
        dst[:, 1] += w * src[:, 0]
    return out.reshape(array.shape)


def pauli_array(array: np.ndarray, pauli: PauliString) -> np.ndarray:
    """Return P applied to the array, using P|b> = i^ny (-1)^popcount(b & z) |b ^ x>."""
    dim = array.shape[0]
    if dim != 1 << pauli.n:
        raise DimensionError(f"{pauli.n}-qubit Pauli on a {dim}-amplitude state")
    index = np.arange(dim, dtype=np.int64)
    parity = np.zeros(dim, dtype=np.int64)
    for q in range(pauli.n):
        if (pauli.z >> q) & 1:
            parity ^= (index >> q) & 1
    phase = (1j ** pauli.y_count) * (1 - 2 * parity)
    batch = _as_batch(array)
    out = np.empty_like(batch)
    out[index ^ pauli.x] = phase[:, None] * batch
    return out.reshape(array.shape)


def apply_diagonal_phase(state: StateVector, diag: np.ndarray, gamma: float) -> StateVector:
    diagonal_phase_array(state.amps, diag, gamma)
    return state


def apply_rx_layer(state: StateVector, beta: float,
                   weights: Optional[Sequence[float]] = None) -> StateVector:
    rx_layer_array(state.amps, state.n, beta, weights)
    return state


def apply_pauli(state: StateVector, pauli: PauliString) -> StateVector:
    state.amps[:] = pauli_array(state.amps, pauli)
    return state


def expectation_diagonal(state: StateVector, diag: np.ndarray) -> float:
    """sum_z |amps[z]|^2 diag[z]."""
    _check_dim(state.amps, diag)
    return float(np.sum(measure_distribution(state) * diag))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>."""
    if a.dim != b.dim:
        raise DimensionError(f"cannot contract {a.dim}- and {b.dim}-amplitude states")
    return complex(np.sum(np.conj(a.amps) * b.amps))


def measure_distribution(state: StateVector) -> np.ndarray:
    return np.abs(state.amps) ** 2
