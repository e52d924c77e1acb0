"""
Infinite-temperature four-point OTOC of random-angle QAOA unitaries.

C(W1, W2; U) = (1/d) Tr[W1 A W1 A] with A = U^dagger W2 U. Each trace term
is <A W1 z | W1 A z>, so one basis state costs two applications of A.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..hamiltonian.cost import CostHamiltonian, build_cost_hamiltonian
from ..dla.pauli import PauliString
from ..qaoa.circuit import QaoaParams, evolve_adjoint_array, evolve_array
from ..sat.instance import Mode, clauses_for_ratio, generate_instance
from ..sat.rng import derive_seed
from ..statevector.dense import MAX_DENSE_QUBITS
from ..statevector.statevector import pauli_array
from ..utils.errors import CapacityError, ConfigError

logger = logging.getLogger(__name__)

EXACT_DEFAULT_MAX_QUBITS = 10
EXACT_MAX_QUBITS = MAX_DENSE_QUBITS
RANGE_TOLERANCE = 0.05


class TraceMethod(str, Enum):
    AUTO = "auto"
    EXACT = "exact"
    STOCHASTIC = "stochastic"


class OtocConfig(BaseModel):
    """Operators, sampling and trace method for one OTOC evaluation."""

    model_config = ConfigDict(frozen=True)

    w1: str = "Y"
    w1_site: int = Field(0, ge=0)
    w2: str = "Y"
    # None means floor(n / 2)
    w2_site: Optional[int] = Field(None, ge=0)
    n_unitary_samples: int = Field(20, ge=1)
    method: TraceMethod = TraceMethod.AUTO
    n_probe: int = Field(32, ge=1)
    chunk_size: int = Field(256, ge=1)

    @field_validator("w1", "w2")
    @classmethod
    def single_pauli(cls, value: str) -> str:
        value = value.upper()
        if value not in ("X", "Y", "Z"):
            raise ValueError(f"OTOC operators must be X, Y or Z, got {value!r}")
        return value

    def operators(self, n: int) -> Tuple[PauliString, PauliString]:
        site2 = n // 2 if self.w2_site is None else self.w2_site
        for site in (self.w1_site, site2):
            if site >= n:
                raise ConfigError(f"OTOC site {site} outside [0, {n})")
        return PauliString.single(n, self.w1_site, self.w1), PauliString.single(n, site2, self.w2)

    def resolved_method(self, n: int) -> TraceMethod:
        if self.method is TraceMethod.AUTO:
            return TraceMethod.EXACT if n <= EXACT_DEFAULT_MAX_QUBITS else TraceMethod.STOCHASTIC
        return self.method


class OtocValue(NamedTuple):
    real: float
    imag: float
    stderr: float


def haar_otoc(n: int) -> float:
    """Haar average -d / (d^2 - 1) for traceless single-qubit Paulis."""
    d = float(2 ** n)
    return -d / (d * d - 1.0)


def otoc_in_range(value: float, n: int, tolerance: float = RANGE_TOLERANCE) -> bool:
    ok = haar_otoc(n) - tolerance <= value <= 1.0 + tolerance
    if not ok:
        logger.warning(f"OTOC {value:.6g} outside [{haar_otoc(n):.3g}, 1] at n={n}")
    return ok


def _trace_terms(ham: CostHamiltonian, params: QaoaParams, w1: PauliString, w2: PauliString,
                 columns: np.ndarray) -> np.ndarray:
    """Per-column <A W1 c | W1 A c> for a (d, batch) block."""

    def apply_a(array: np.ndarray) -> np.ndarray:
        evolve_array(array, ham, params)
        array = pauli_array(array, w2)
        return evolve_adjoint_array(array, ham, params)

    left = apply_a(pauli_array(columns, w1))
    right = pauli_array(apply_a(columns.copy()), w1)
    return np.sum(np.conj(left) * right, axis=0)


def _exact_trace(ham, params, w1, w2, chunk_size: int) -> complex:
    d = ham.dim
    total = 0j
    for start in range(0, d, chunk_size):
        width = min(chunk_size, d - start)
        block = np.zeros((d, width), dtype=np.complex128)
        block[start + np.arange(width), np.arange(width)] = 1.0
        total += complex(np.sum(_trace_terms(ham, params, w1, w2, block)))
    return total / d


def _stochastic_trace(ham, params, w1, w2, n_probe: int, chunk_size: int,
                      rng: np.random.Generator) -> Tuple[complex, float]:
    """Random-phase probes: E[<phi|M|phi>] = Tr M for unit-modulus entries."""
    d = ham.dim
    estimates = []
    for start in range(0, n_probe, chunk_size):
        width = min(chunk_size, n_probe - start)
        block = np.exp(2j * np.pi * rng.random((d, width)))
        estimates.append(_trace_terms(ham, params, w1, w2, block) / d)
    values = np.concatenate(estimates)
    stderr = float(np.std(values.real, ddof=1) / np.sqrt(len(values))) if len(values) > 1 else float("nan")
    return complex(np.mean(values)), stderr


def otoc_single(ham: CostHamiltonian, params: QaoaParams, cfg: OtocConfig = OtocConfig(),
                rng: Optional[np.random.Generator] = None) -> OtocValue:
    """OTOC of the single unitary U(params); stderr is zero for the exact trace."""
    w1, w2 = cfg.operators(ham.n)
    method = cfg.resolved_method(ham.n)
    if method is TraceMethod.EXACT:
        if ham.n > EXACT_MAX_QUBITS:
            raise CapacityError("exact OTOC trace qubits", ham.n, EXACT_MAX_QUBITS)
        value = _exact_trace(ham, params, w1, w2, cfg.chunk_size)
        stderr = 0.0
    else:
        if rng is None:
            rng = np.random.default_rng()
        value, stderr = _stochastic_trace(ham, params, w1, w2, cfg.n_probe, cfg.chunk_size, rng)
    return OtocValue(value.real, value.imag, stderr)


def otoc_instance(ham: CostHamiltonian, p: int, cfg: OtocConfig, rng: np.random.Generator) -> List[OtocValue]:
    """OTOC for n_unitary_samples random angle draws at depth p."""
    return [otoc_single(ham, QaoaParams.random(p, rng), cfg, rng) for _ in range(cfg.n_unitary_samples)]


@dataclass
class OtocPoint:
    ratio: float
    m: int
    p: int
    mean: float
    stderr: float
    mean_imag: float
    in_range: bool
    instance_means: List[float] = field(default_factory=list)


def summarize_otoc(ratio: float, m: int, p: int, n: int, per_instance: Sequence[Sequence[OtocValue]]) -> OtocPoint:
    """Average over draws, then over instances; stderr over instance means."""
    means = np.array([np.mean([v.real for v in values]) for values in per_instance])
    imag = float(np.mean([v.imag for values in per_instance for v in values]))
    if len(means) > 1:
        stderr = float(means.std(ddof=1) / np.sqrt(len(means)))
    else:
        draws = np.array([v.real for v in per_instance[0]])
        stderr = float(draws.std(ddof=1) / np.sqrt(len(draws))) if len(draws) > 1 else 0.0
    mean = float(means.mean())
    return OtocPoint(ratio, m, p, mean, stderr, imag, otoc_in_range(mean, n), means.tolist())


def otoc_ensemble(n: int, k: int, mode: Mode, ratio_grid: Sequence[float], p_grid: Sequence[int],
                  n_instances: int, seed: int, cfg: OtocConfig = OtocConfig()) -> List[OtocPoint]:
    """Mean OTOC surface over (ratio, p)."""
    if n_instances < 1:
        raise ConfigError("need at least one instance per point")
    points = []
    for point, ratio in enumerate(ratio_grid):
        m = clauses_for_ratio(n, ratio)
        hams = [
            build_cost_hamiltonian(generate_instance(n, m, k, mode, derive_seed(seed, point * n_instances + j, 0)))
            for j in range(n_instances)
        ]
        for b, p in enumerate(p_grid):
            per_instance = []
            for j, ham in enumerate(hams):
                rng = np.random.Generator(np.random.Philox(derive_seed(seed, point * n_instances + j, b + 1)))
                per_instance.append(otoc_instance(ham, p, cfg, rng))
            points.append(summarize_otoc(ratio, m, p, n, per_instance))
            logger.info(f"ratio {ratio:.3f}, p={p}: OTOC = {points[-1].mean:.5f}")
    return points
