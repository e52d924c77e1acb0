"""
QAOA circuit evaluation, cost and gradients.

The p-layer state is  prod_l exp(-i beta_l H_B) exp(-i gamma_l H_C) |+>^n
with H_B = sum_i w_i X_i (w = 1 unless weights are given).
"""

import logging
from dataclasses import dataclass
from math import pi
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..hamiltonian.cost import CostHamiltonian
from ..statevector.statevector import (
    StateVector,
    diagonal_phase_array,
    plus_state,
    rx_layer_array,
    x_sum_array,
)
from ..utils.errors import DimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QaoaParams:
    gammas: Tuple[float, ...]
    betas: Tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if len(self.gammas) != len(self.betas):
            raise DimensionError(f"{len(self.gammas)} gammas but {len(self.betas)} betas")

    @property
    def p(self) -> int:
        return len(self.gammas)

    @classmethod
    def empty(cls) -> "QaoaParams":
        return cls((), ())

    @classmethod
    def from_vector(cls, vector: Sequence[float]) -> "QaoaParams":
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape[0] % 2:
            raise DimensionError("parameter vector must have even length")
        p = vector.shape[0] // 2
        return cls(tuple(vector[:p]), tuple(vector[p:]))

    @classmethod
    def random(cls, p: int, rng: np.random.Generator) -> "QaoaParams":
        """gamma uniform in [0, 2 pi), beta uniform in [0, pi)."""
        return cls(tuple(rng.uniform(0.0, 2 * pi, p)), tuple(rng.uniform(0.0, pi, p)))

    def to_vector(self) -> np.ndarray:
        return np.array(self.gammas + self.betas, dtype=np.float64)


@dataclass(frozen=True)
class Adjoint:
    """Analytic derivatives from one forward and one backward sweep."""


@dataclass(frozen=True)
class CentralFD:
    step: float = 1e-5

    def __post_init__(self) -> None:
        if self.step <= 0:
            raise ValueError("finite-difference step must be positive")


GradientMethod = Union[Adjoint, CentralFD]


def evolve_array(array: np.ndarray, ham: CostHamiltonian, params: QaoaParams,
                 weights: Optional[Sequence[float]] = None) -> np.ndarray:
    """Apply U(params) to an array of shape (2**n,) or (2**n, batch), in place."""
    for gamma, beta in zip(params.gammas, params.betas):
        diagonal_phase_array(array, ham.diag, gamma)
        rx_layer_array(array, ham.n, beta, weights)
    return array


def evolve_adjoint_array(array: np.ndarray, ham: CostHamiltonian, params: QaoaParams,
                         weights: Optional[Sequence[float]] = None) -> np.ndarray:
    """Apply U(params)^dagger in place."""
    for gamma, beta in zip(reversed(params.gammas), reversed(params.betas)):
        rx_layer_array(array, ham.n, -beta, weights)
        diagonal_phase_array(array, ham.diag, -gamma)
    return array


def evolve(ham: CostHamiltonian, params: QaoaParams,
           weights: Optional[Sequence[float]] = None) -> StateVector:
    state = plus_state(ham.n)
    evolve_array(state.amps, ham, params, weights)
    return state


def cost(ham: CostHamiltonian, params: QaoaParams,
         weights: Optional[Sequence[float]] = None) -> float:
    """<psi(params)| H_C |psi(params)>."""
    amps = evolve(ham, params, weights).amps
    return float(np.sum(np.abs(amps) ** 2 * ham.diag))


def _im_inner(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sum(np.conj(a) * b).imag)


def cost_and_gradient(ham: CostHamiltonian, params: QaoaParams,
                      weights: Optional[Sequence[float]] = None) -> Tuple[float, np.ndarray]:
    """
    Cost and its adjoint gradient, ordered (d/dgamma_1..p, d/dbeta_1..p).

    For a layer exp(-i theta G) the derivative is 2 Im <lambda| G |psi>,
    with psi and lambda = H_C psi_final both rolled back to that layer.
    """
    p = params.p
    psi = evolve(ham, params, weights).amps
    value = float(np.sum(np.abs(psi) ** 2 * ham.diag))
    grad = np.zeros(2 * p, dtype=np.float64)
    pair = np.empty((psi.shape[0], 2), dtype=np.complex128)
    pair[:, 0] = psi
    pair[:, 1] = ham.diag * psi
    for layer in reversed(range(p)):
        gamma, beta = params.gammas[layer], params.betas[layer]
        mixed = x_sum_array(pair[:, 0].copy(), ham.n, weights)
        grad[p + layer] = 2.0 * _im_inner(pair[:, 1], mixed)
        rx_layer_array(pair, ham.n, -beta, weights)
        grad[layer] = 2.0 * _im_inner(pair[:, 1], ham.diag * pair[:, 0])
        diagonal_phase_array(pair, ham.diag, -gamma)
    return value, grad


def gradient(ham: CostHamiltonian, params: QaoaParams, method: GradientMethod = Adjoint(),
             weights: Optional[Sequence[float]] = None) -> np.ndarray:
    if isinstance(method, Adjoint):
        return cost_and_gradient(ham, params, weights)[1]
    vector = params.to_vector()
    grad = np.zeros_like(vector)
    for j in range(vector.shape[0]):
        grad[j] = _central_difference(ham, vector, j, method.step, weights)
    return grad


def gamma1_derivative(ham: CostHamiltonian, params: QaoaParams, method: GradientMethod = CentralFD(),
                      weights: Optional[Sequence[float]] = None) -> float:
    """dC/dgamma_1 alone; the finite-difference path costs two evaluations."""
    if params.p == 0:
        raise DimensionError("dC/dgamma_1 needs at least one layer")
    if isinstance(method, Adjoint):
        return float(cost_and_gradient(ham, params, weights)[1][0])
    return _central_difference(ham, params.to_vector(), 0, method.step, weights)


def _central_difference(ham: CostHamiltonian, vector: np.ndarray, j: int, step: float,
                        weights: Optional[Sequence[float]]) -> float:
    forward = vector.copy()
    backward = vector.copy()
    forward[j] += step
    backward[j] -= step
    return (cost(ham, QaoaParams.from_vector(forward), weights)
            - cost(ham, QaoaParams.from_vector(backward), weights)) / (2.0 * step)
