"""
Quantum adiabatic baseline along H(s) = s H_C + (1 - s) sum_i occ_i X_i.

The mixing weights are the variable occurrence counts, and the initial
state (|0> - |1>)^n / 2^(n/2) is the ground state of the mixing term.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from ..hamiltonian.cost import CostHamiltonian, build_cost_hamiltonian
from ..sat.instance import Mode, clauses_for_ratio, generate_instance
from ..sat.rng import derive_seed
from ..statevector.dense import MAX_DENSE_QUBITS, interpolated_hamiltonian, lowest_eigenvalues
from ..statevector.statevector import (
    StateVector,
    diagonal_phase_array,
    plus_state,
    rx_layer_array,
)
from ..utils.errors import CapacityError, ConfigError, IntegrationError

logger = logging.getLogger(__name__)

DEGENERACY_TOLERANCE = 1e-9
NORM_DRIFT_LIMIT = 1e-6
MAX_REFINEMENTS = 4
DEFAULT_TOTAL_TIME = 50.0


@dataclass(frozen=True)
class AnnealSchedule:
    """Linear schedule s = t / total_time, integrated in ``steps`` equal steps."""

    total_time: float = DEFAULT_TOTAL_TIME
    steps: int = 10000
    s_points: int = 201

    def __post_init__(self) -> None:
        if not self.total_time > 0:
            raise ConfigError(f"total_time must be positive, got {self.total_time}")
        if self.steps < 1:
            raise ConfigError("steps must be at least 1")
        if self.s_points < 3:
            raise ConfigError("the gap scan needs at least 3 s-points")

    @property
    def dt(self) -> float:
        return self.total_time / self.steps

    @property
    def s_grid(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.s_points)


class GapMode(str, Enum):
    ADJACENT = "adjacent"
    GROUND_SPACE = "ground_space"


class GapReport(NamedTuple):
    min_gap: float
    s_star: float
    inverse_gap_sq: float
    gap_mode: GapMode
    degeneracy: int


def _mixing_weights(ham: CostHamiltonian) -> np.ndarray:
    return ham.table.occ.astype(np.float64)


def _check_capacity(ham: CostHamiltonian) -> None:
    if ham.n > MAX_DENSE_QUBITS:
        raise CapacityError("adiabatic qubits", ham.n, MAX_DENSE_QUBITS)


def anneal_initial_state(ham: CostHamiltonian) -> StateVector:
    """Amplitudes 2^(-n/2) (-1)^popcount(z)."""
    state = plus_state(ham.n)
    index = np.arange(state.dim)
    parity = np.zeros(state.dim, dtype=np.int64)
    for q in range(ham.n):
        parity ^= (index >> q) & 1
    state.amps *= 1 - 2 * parity
    return state


def _ground_space_size(ham: CostHamiltonian) -> int:
    return int(len(ham.ground_states))


def _gap_at(ham: CostHamiltonian, weights: np.ndarray, s: float, mode: GapMode, tol: float):
    h = interpolated_hamiltonian(ham.diag, weights, s)
    if mode is GapMode.GROUND_SPACE:
        d = _ground_space_size(ham)
        if d >= ham.dim:
            return 0.0, d
        values = lowest_eigenvalues(h, d + 1)
        return float(values[d] - values[0]), d
    count = min(ham.dim, 4)
    while True:
        values = lowest_eigenvalues(h, count)
        cluster = int(np.count_nonzero(values - values[0] <= tol))
        if cluster < len(values):
            return float(values[cluster] - values[0]), cluster
        if count == ham.dim:
            return 0.0, cluster
        count = min(ham.dim, 2 * count)


def min_gap(ham: CostHamiltonian, s_grid: Optional[Sequence[float]] = None,
            gap_mode: GapMode = GapMode.ADJACENT, tol: float = DEGENERACY_TOLERANCE) -> GapReport:
    """
    Minimum spectral gap over the interior of the s-grid.

    ``adjacent`` measures from the ground level to the next distinct level
    (levels within ``tol`` are clustered); ``ground_space`` measures from the
    ground level to level D, D being the degeneracy of the final ground space.
    """
    _check_capacity(ham)
    gap_mode = GapMode(gap_mode)
    grid = np.asarray(AnnealSchedule().s_grid if s_grid is None else s_grid, dtype=np.float64)
    interior = grid[(grid > 0.0) & (grid < 1.0)]
    if not len(interior):
        raise ConfigError("s-grid has no interior points")
    weights = _mixing_weights(ham)
    best = (np.inf, float(interior[0]), 1)
    for s in interior:
        gap, degeneracy = _gap_at(ham, weights, float(s), gap_mode, tol)
        if gap < best[0]:
            best = (gap, float(s), degeneracy)
    gap = max(0.0, best[0])
    inverse = np.inf if gap <= tol else 1.0 / gap ** 2
    return GapReport(gap, best[1], inverse, gap_mode, best[2])


def spectrum_along_path(ham: CostHamiltonian, s_grid: Sequence[float], levels: int = 4) -> np.ndarray:
    """Lowest ``levels`` eigenvalues of H(s) per grid point, shape (len(s_grid), levels)."""
    _check_capacity(ham)
    weights = _mixing_weights(ham)
    levels = min(levels, ham.dim)
    return np.array([
        lowest_eigenvalues(interpolated_hamiltonian(ham.diag, weights, float(s)), levels) for s in s_grid
    ])


def _integrate(ham: CostHamiltonian, weights: np.ndarray, total_time: float, steps: int) -> np.ndarray:
    amps = anneal_initial_state(ham).amps
    dt = total_time / steps
    for j in range(steps):
        s = (j + 0.5) / steps
        half = 0.5 * (1.0 - s) * dt
        rx_layer_array(amps, ham.n, half, weights)
        diagonal_phase_array(amps, ham.diag, s * dt)
        rx_layer_array(amps, ham.n, half, weights)
    return amps


def evolve_anneal(ham: CostHamiltonian, schedule: AnnealSchedule = AnnealSchedule()) -> StateVector:
    """
    Integrate i d/dt psi = H(t / T) psi with a symmetric split per step:
    half a mixing step, the full cost phase, half a mixing step, all at the
    step midpoint. Doubles the step count and retries when the norm drifts.
    """
    _check_capacity(ham)
    weights = _mixing_weights(ham)
    steps = schedule.steps
    for attempt in range(MAX_REFINEMENTS + 1):
        amps = _integrate(ham, weights, schedule.total_time, steps)
        drift = abs(float(np.sqrt(np.sum(np.abs(amps) ** 2))) - 1.0)
        if np.all(np.isfinite(amps)) and drift < NORM_DRIFT_LIMIT:
            return StateVector(amps)
        logger.warning(f"anneal norm drift {drift:.3g} with {steps} steps; refining")
        steps *= 2
    raise IntegrationError(f"norm drift persisted after {MAX_REFINEMENTS} refinements ({steps // 2} steps)")


def success_probability(ham: CostHamiltonian, final_state: StateVector) -> float:
    """Probability mass on basis states attaining min(diag)."""
    probs = np.abs(final_state.amps[ham.ground_states]) ** 2
    return float(min(1.0, np.sum(probs)))


class QaaResult(NamedTuple):
    gap: GapReport
    success: float
    satisfiable: bool


def qaa_instance(ham: CostHamiltonian, schedule: AnnealSchedule = AnnealSchedule(),
                 gap_mode: GapMode = GapMode.GROUND_SPACE) -> QaaResult:
    report = min_gap(ham, schedule.s_grid, gap_mode)
    final = evolve_anneal(ham, schedule)
    return QaaResult(report, success_probability(ham, final), bool(ham.violations.min() == 0))


@dataclass
class QaaPoint:
    ratio: float
    m: int
    label: str
    count: int
    median_inverse_gap_sq: float
    mean_success: float
    success_stderr: float
    inverse_gaps: List[float] = field(default_factory=list)


def _qaa_point(ratio: float, m: int, label: str, results: Sequence[QaaResult]) -> QaaPoint:
    if not results:
        nan = float("nan")
        return QaaPoint(ratio, m, label, 0, nan, nan, nan)
    inverse = [r.gap.inverse_gap_sq for r in results]
    success = np.array([r.success for r in results])
    stderr = float(success.std(ddof=1) / np.sqrt(len(success))) if len(success) > 1 else float("nan")
    return QaaPoint(ratio, m, label, len(results), float(np.median(inverse)), float(success.mean()), stderr, inverse)


def qaa_scan(n: int, k: int, mode: Mode, ratio_grid: Sequence[float], total_time: float, n_instances: int,
             seed: int, gap_mode: GapMode = GapMode.GROUND_SPACE, steps: int = 10000,
             s_points: int = 201) -> List[QaaPoint]:
    """Median 1/gap^2 and mean success per ratio, for all instances and split by SAT label."""
    schedule = AnnealSchedule(total_time, steps, s_points)
    points = []
    for point, ratio in enumerate(ratio_grid):
        m = clauses_for_ratio(n, ratio)
        results = []
        for j in range(n_instances):
            inst = generate_instance(n, m, k, mode, derive_seed(seed, point * n_instances + j, 0))
            results.append(qaa_instance(build_cost_hamiltonian(inst), schedule, gap_mode))
        points.append(_qaa_point(ratio, m, "all", results))
        points.append(_qaa_point(ratio, m, "SAT", [r for r in results if r.satisfiable]))
        points.append(_qaa_point(ratio, m, "UNSAT", [r for r in results if not r.satisfiable]))
        logger.info(f"ratio {ratio:.3f}: median 1/gap^2 = {points[-3].median_inverse_gap_sq:.4g}, "
                    f"mean P = {points[-3].mean_success:.4f}")
    return points
