"""
Sweep tasks: one (instance, grid point) unit of work with all randomness pre-derived.

``run_task`` is a top-level function so worker processes can unpickle it.
"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..dla.generators import instance_closure
from ..hamiltonian.cost import CostHamiltonian, build_cost_hamiltonian, energy_violation_excess
from ..mwis.greedy import best_greedy
from ..otoc.otoc import OtocConfig, otoc_in_range, otoc_instance
from ..qaa.anneal import AnnealSchedule, qaa_instance
from ..qaoa.circuit import Adjoint, CentralFD
from ..qaoa.gradient_scan import instance_gradient_sd, is_censored
from ..qaoa.training import Decision, StopCriteria, solve_with_repetitions
from ..sat.instance import Mode, SatInstance, clauses_for_ratio, generate_instance
from ..sat.oracle import brute_force_max_sat
from ..sat.rng import derive_seed
from ..utils.config import Settings
from ..utils.errors import SweepTaskError
from .config import ExperimentKind, SweepConfig
from .records import ExperimentRecord, TaskKey, task_key

logger = logging.getLogger(__name__)

Metric = Tuple[str, float, Optional[float]]


@dataclass(frozen=True)
class SweepTask:
    cfg: SweepConfig
    config_hash: str
    n: int
    ratio: float
    m: int
    instance_index: int
    instance_seed: int
    p: Optional[int] = None
    p_index: int = 0
    cutoff: Optional[int] = None
    record_wall_time: bool = False
    chunk_size: int = 256

    @property
    def key(self) -> TaskKey:
        return task_key(self.config_hash, self.instance_seed, self.n, self.p, self.ratio, self.cutoff)

    def instance(self) -> SatInstance:
        cfg = self.cfg
        return generate_instance(self.n, self.m, cfg.k, cfg.mode, self.instance_seed, cfg.reject_duplicates)

    def hamiltonian(self) -> CostHamiltonian:
        return build_cost_hamiltonian(self.instance())

    def param_rng(self) -> np.random.Generator:
        """Parameter draws for grid entry p_index; stream 0 is reserved for the instance."""
        return np.random.Generator(np.random.Philox(derive_seed(self.cfg.seed, self.instance_index, self.p_index + 1)))


def enumerate_tasks(cfg: SweepConfig, settings: Optional[Settings] = None) -> List[SweepTask]:
    """
    Every task of the sweep in canonical order. Instance indices run over
    (ratio point, size, instance), so a single-size scan derives the same
    seeds as the library scan functions.
    """
    settings = settings or Settings()
    config_hash = cfg.config_hash()
    sizes = cfg.resolved_n_grid if cfg.experiment is ExperimentKind.PLATEAU else [cfg.n]
    tasks = []
    for point, ratio in enumerate(cfg.ratios):
        for a, n in enumerate(sizes):
            m = clauses_for_ratio(n, ratio)
            for j in range(cfg.instances):
                index = (point * len(sizes) + a) * cfg.instances + j
                base = dict(cfg=cfg, config_hash=config_hash, n=n, ratio=ratio, m=m, instance_index=index,
                            instance_seed=derive_seed(cfg.seed, index, 0),
                            record_wall_time=settings.record_wall_time, chunk_size=settings.chunk_size)
                if not cfg.uses_p:
                    tasks.append(SweepTask(**base))
                    continue
                for b, p in enumerate(cfg.p):
                    if cfg.experiment is ExperimentKind.QAOA_SOLVE:
                        tasks.extend(SweepTask(**base, p=p, p_index=b, cutoff=c) for c in cfg.resolved_cutoffs)
                    else:
                        tasks.append(SweepTask(**base, p=p, p_index=b))
    return tasks


def _flag(value: bool) -> float:
    return 1.0 if value else 0.0


def _satprob(task: SweepTask) -> List[Metric]:
    inst = task.instance()
    result = brute_force_max_sat(inst)
    return [
        ("satisfiable", _flag(result.max_satisfied == inst.m), None),
        ("max_satisfied", float(result.max_satisfied), None),
        ("ground_degeneracy", float(result.ground_degeneracy), None),
    ]


def _gradient(task: SweepTask) -> List[Metric]:
    cfg = task.cfg
    method = Adjoint() if cfg.gradient == "adjoint" else CentralFD()
    sd = instance_gradient_sd(task.hamiltonian(), task.p, cfg.resolved_samples, task.param_rng(), method)
    censored = is_censored(sd)
    nan = float("nan")
    return [
        ("grad_sd", sd, None),
        ("inverse_grad_sd", nan if censored else 1.0 / sd, None),
        ("log_grad_sd", nan if censored else float(np.log(sd)), None),
        ("censored", _flag(censored), None),
    ]


def _dlascan(task: SweepTask) -> List[Metric]:
    closure = instance_closure(task.hamiltonian(), task.cfg.dla_method)
    return [("dla_dim", float(closure.dim), None), ("dla_truncated", _flag(closure.truncated), None)]


def _otoc(task: SweepTask) -> List[Metric]:
    cfg = task.cfg
    otoc_cfg = OtocConfig(n_unitary_samples=cfg.resolved_samples, method=cfg.trace_method,
                          n_probe=cfg.probes, chunk_size=task.chunk_size)
    values = otoc_instance(task.hamiltonian(), task.p, otoc_cfg, task.param_rng())
    real = np.array([v.real for v in values])
    stderr = float(real.std(ddof=1) / np.sqrt(len(real))) if len(real) > 1 else None
    mean = float(real.mean())
    return [
        ("otoc", mean, stderr),
        ("otoc_imag", float(np.mean([v.imag for v in values])), None),
        ("otoc_in_range", _flag(otoc_in_range(mean, task.n)), None),
    ]


def _qaoa_solve(task: SweepTask) -> List[Metric]:
    cfg = task.cfg
    ham = task.hamiltonian()
    best, report = solve_with_repetitions(
        ham, task.p, reps=cfg.reps, seed=task.instance_seed, init=cfg.init,
        stop=StopCriteria(max_steps=task.cutoff), threshold=cfg.eth,
        energy_decision=cfg.energy_decision, epsilon=cfg.epsilon,
    )
    metrics = [
        ("approx_ratio", report.approx_ratio, None),
        ("approximation_error", report.approximation_error, None),
        ("expected_violations", report.expected_violations, None),
        ("expected_energy", report.expected_energy, None),
        ("decision_sat", _flag(report.decision is Decision.SAT), None),
        ("decision_success", _flag(report.success), None),
        ("satisfiable", _flag(int(ham.violations.min()) == 0), None),
        ("initial_cost", best.initial_cost, None),
        ("final_cost", best.final_cost, None),
        ("steps", float(best.steps), None),
    ]
    if cfg.mode is Mode.ONE_IN_K and cfg.k == 3:
        metrics.append(("energy_excess", energy_violation_excess(ham).excess, None))
    return metrics


def _qaa(task: SweepTask) -> List[Metric]:
    cfg = task.cfg
    result = qaa_instance(task.hamiltonian(), AnnealSchedule(cfg.ta, cfg.anneal_steps, cfg.s_points), cfg.gap_mode)
    label = "sat" if result.satisfiable else "unsat"
    return [
        ("min_gap", result.gap.min_gap, None),
        ("s_star", result.gap.s_star, None),
        ("inverse_gap_sq", result.gap.inverse_gap_sq, None),
        (f"inverse_gap_sq_{label}", result.gap.inverse_gap_sq, None),
        ("success_probability", result.success, None),
        (f"success_probability_{label}", result.success, None),
        ("satisfiable", _flag(result.satisfiable), None),
    ]


def _mwis(task: SweepTask) -> List[Metric]:
    inst = task.instance()
    report = best_greedy(inst)
    metrics = [
        ("greedy_ratio", report.ratio_max_sat, None),
        ("greedy_ratio_mwis", report.ratio_mwis, None),
        ("greedy_weight", report.best.weight, None),
        ("mwis_weight", report.optimum, None),
        ("greedy_approximation_error", report.approximation_error, None),
        ("satisfiable", _flag(report.optimum == inst.m), None),
    ]
    for result in report.results:
        metrics.append((f"weight_{result.algorithm.value}", result.weight, None))
        metrics.append((f"bound_{result.algorithm.value}", result.bound, None))
    return metrics


_RUNNERS: Dict[ExperimentKind, Callable[[SweepTask], List[Metric]]] = {
    ExperimentKind.SATPROB: _satprob,
    ExperimentKind.GRADSCAN: _gradient,
    ExperimentKind.PLATEAU: _gradient,
    ExperimentKind.DLASCAN: _dlascan,
    ExperimentKind.OTOC: _otoc,
    ExperimentKind.QAOA_SOLVE: _qaoa_solve,
    ExperimentKind.QAA: _qaa,
    ExperimentKind.MWIS: _mwis,
}


def run_task(task: SweepTask) -> List[ExperimentRecord]:
    """Run one task; any failure surfaces as SweepTaskError carrying the instance seed."""
    start = time.perf_counter()
    try:
        metrics = _RUNNERS[task.cfg.experiment](task)
    except Exception as e:
        logger.error(f"{task.cfg.experiment.value} task n={task.n} ratio={task.ratio} p={task.p} failed: {e}")
        raise SweepTaskError(f"{task.cfg.experiment.value} task failed: {e}", task.instance_seed) from e
    wall = time.perf_counter() - start if task.record_wall_time else None
    return [
        ExperimentRecord(
            config_hash=task.config_hash,
            experiment=task.cfg.experiment.value,
            instance_seed=task.instance_seed,
            instance_index=task.instance_index,
            n=task.n,
            p=task.p,
            ratio=task.ratio,
            m=task.m,
            cutoff=task.cutoff,
            metric=metric,
            value=float(value),
            stderr=stderr,
            wall_time=wall,
        )
        for metric, value, stderr in metrics
    ]
