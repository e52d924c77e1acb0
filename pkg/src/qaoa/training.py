"""
Quasi-Newton training with random or pre-optimized initialization,
repetitions and the accuracy/decision metrics.
"""

import logging
import time
from dataclasses import dataclass
from enum import Enum
from math import pi
from typing import List, Optional, Tuple, Union

import numpy as np
from scipy.optimize import minimize

from ..hamiltonian.cost import CostHamiltonian
from ..sat.rng import derive_seed
from ..utils.errors import ConfigError, TrainingError
from .circuit import QaoaParams, cost, cost_and_gradient, evolve

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD = 0.5
CASCADE_STEP = 4


@dataclass(frozen=True)
class RandomInit:
    """Every angle uniform in [low, high]."""

    low: float = 0.0
    high: float = pi

    def initial(self, p: int, rng: np.random.Generator) -> QaoaParams:
        return QaoaParams(tuple(rng.uniform(self.low, self.high, p)), tuple(rng.uniform(self.low, self.high, p)))


@dataclass(frozen=True)
class PreOptimizedInit:
    """First p' layers from a trained p'-layer optimum, the rest uniform in [0, epsilon]."""

    previous: QaoaParams
    epsilon: float = 0.1

    def initial(self, p: int, rng: np.random.Generator) -> QaoaParams:
        extra = p - self.previous.p
        if extra < 0:
            raise ConfigError(f"cannot seed {p} layers from a {self.previous.p}-layer optimum")
        return QaoaParams(
            self.previous.gammas + tuple(rng.uniform(0.0, self.epsilon, extra)),
            self.previous.betas + tuple(rng.uniform(0.0, self.epsilon, extra)),
        )


InitStrategy = Union[RandomInit, PreOptimizedInit]


@dataclass(frozen=True)
class StopCriteria:
    cost_delta: float = 1e-6
    grad_norm: float = 1e-6
    max_steps: int = 10000

    def __post_init__(self) -> None:
        if self.max_steps < 1:
            raise ConfigError("max_steps must be at least 1")


class StopReason(str, Enum):
    TRIVIAL = "trivial"
    GRAD_NORM = "grad_norm"
    COST_DELTA = "cost_delta"
    MAX_STEPS = "max_steps"
    STALLED = "stalled"


@dataclass
class TrainResult:
    params: QaoaParams
    final_cost: float
    initial_cost: float
    steps: int
    wall_time: float
    repetition_index: int = 0
    stop_reason: StopReason = StopReason.GRAD_NORM


class _Tracker:
    def __init__(self, ham: CostHamiltonian):
        self.ham = ham
        self.best_cost = np.inf
        self.best_vector: Optional[np.ndarray] = None
        self.initial_cost: Optional[float] = None
        self.previous: Optional[float] = None

    def __call__(self, vector: np.ndarray):
        value, grad = cost_and_gradient(self.ham, QaoaParams.from_vector(vector))
        if not np.isfinite(value) or not np.all(np.isfinite(grad)):
            raise TrainingError(f"non-finite cost {value} at parameters {vector.tolist()}")
        if self.initial_cost is None:
            self.initial_cost = value
        if value < self.best_cost:
            self.best_cost = value
            self.best_vector = vector.copy()
        return value, grad


def train(ham: CostHamiltonian, p: int, init: InitStrategy, stop: StopCriteria = StopCriteria(),
          rng: Optional[np.random.Generator] = None, repetition_index: int = 0) -> TrainResult:
    """
    Minimize the QAOA cost with BFGS.

    Stops on a cost change or gradient norm below the thresholds, or at
    ``stop.max_steps`` iterations. The reported parameters are the best ever
    evaluated, so the final cost never exceeds the initial one.
    """
    if rng is None:
        rng = np.random.default_rng()
    start = time.perf_counter()
    x0 = init.initial(p, rng)
    if p == 0:
        value = cost(ham, x0)
        return TrainResult(x0, value, value, 0, time.perf_counter() - start,
                           repetition_index, StopReason.TRIVIAL)

    tracker = _Tracker(ham)

    def callback(intermediate_result):
        previous = tracker.previous if tracker.previous is not None else tracker.initial_cost
        tracker.previous = float(intermediate_result.fun)
        if previous is not None and abs(previous - tracker.previous) < stop.cost_delta:
            raise StopIteration

    result = minimize(
        tracker,
        x0.to_vector(),
        jac=True,
        method="BFGS",
        callback=callback,
        options={"gtol": stop.grad_norm, "maxiter": stop.max_steps, "norm": 2},
    )
    if result.status == 0:
        reason = StopReason.GRAD_NORM
    elif result.status == 1:
        reason = StopReason.MAX_STEPS
    elif result.status == 99:
        reason = StopReason.COST_DELTA
    else:
        reason = StopReason.STALLED

    params = QaoaParams.from_vector(tracker.best_vector)
    elapsed = time.perf_counter() - start
    logger.debug(f"p={p} rep={repetition_index}: cost {tracker.initial_cost:.6f} -> "
                 f"{tracker.best_cost:.6f} in {result.nit} steps ({reason.value})")
    return TrainResult(params, float(tracker.best_cost), float(tracker.initial_cost), int(result.nit),
                       elapsed, repetition_index, reason)


def cascade_depths(p: int, step: int = CASCADE_STEP) -> List[int]:
    """Depth schedule step, 2 step, ... ending exactly at p."""
    depths = list(range(step, p, step))
    depths.append(p)
    return depths


def train_cascade(ham: CostHamiltonian, p: int, stop: StopCriteria = StopCriteria(),
                  rng: Optional[np.random.Generator] = None, epsilon: float = 0.1,
                  step: int = CASCADE_STEP, repetition_index: int = 0) -> TrainResult:
    """Train p = step, 2 step, ..., each level seeded by the previous optimum."""
    if rng is None:
        rng = np.random.default_rng()
    result: Optional[TrainResult] = None
    steps = 0
    wall = 0.0
    for depth in cascade_depths(p, step):
        init: InitStrategy = RandomInit() if result is None else PreOptimizedInit(result.params, epsilon)
        result = train(ham, depth, init, stop, rng, repetition_index)
        steps += result.steps
        wall += result.wall_time
    assert result is not None
    result.steps = steps
    result.wall_time = wall
    return result


class Decision(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"


@dataclass
class AccuracyReport:
    approx_ratio: float
    expected_violations: float
    approximation_error: float
    expected_energy: float
    decision: Decision
    success: bool


def accuracy_report(ham: CostHamiltonian, params: QaoaParams, threshold: float = DEFAULT_THRESHOLD,
                    energy_decision: bool = False) -> AccuracyReport:
    """
    Approximation ratio r = (m - E[violations]) / max satisfiable, the
    additional violated clauses, and the decision: SAT iff the expected
    violation count (or energy with ``energy_decision``) is strictly below
    the threshold. ``success`` compares the decision with the oracle.
    """
    violations = ham.violations
    probs = np.abs(evolve(ham, params).amps) ** 2
    expected = float(np.sum(probs * violations))
    expected_energy = float(np.sum(probs * ham.diag))
    m = ham.table.m
    least = int(violations.min())
    best = m - least
    ratio = 1.0 if best == 0 else min(1.0, max(0.0, (m - expected) / best))
    score = expected_energy if energy_decision else expected
    decision = Decision.SAT if score < threshold else Decision.UNSAT
    success = (decision is Decision.SAT) == (least == 0)
    return AccuracyReport(ratio, expected, max(0.0, expected - least), expected_energy, decision, success)


class InitKind(str, Enum):
    RANDOM = "random"
    PREOPT = "preopt"


def solve_with_repetitions(ham: CostHamiltonian, p: int, reps: int = 10, seed: int = 0,
                           init: InitKind = InitKind.PREOPT, stop: StopCriteria = StopCriteria(),
                           threshold: float = DEFAULT_THRESHOLD, energy_decision: bool = False,
                           epsilon: float = 0.1) -> Tuple[TrainResult, AccuracyReport]:
    """Best of ``reps`` independent trainings by final cost, with its accuracy report."""
    if reps < 1:
        raise ConfigError("reps must be at least 1")
    init = InitKind(init)
    best: Optional[TrainResult] = None
    for r in range(reps):
        rng = np.random.Generator(np.random.Philox(derive_seed(seed, 0, r)))
        if init is InitKind.PREOPT:
            result = train_cascade(ham, p, stop, rng, epsilon, repetition_index=r)
        else:
            result = train(ham, p, RandomInit(), stop, rng, repetition_index=r)
        if best is None or result.final_cost < best.final_cost:
            best = result
    assert best is not None
    return best, accuracy_report(ham, best.params, threshold, energy_decision)
