"""
Gradient standard-deviation scans over clause density, depth and size.
"""

import logging
from dataclasses import dataclass, field
from typing import List, NamedTuple, Sequence

import numpy as np
from scipy.stats import linregress

from ..hamiltonian.cost import CostHamiltonian, build_cost_hamiltonian
from ..sat.instance import Mode, clauses_for_ratio, generate_instance
from ..sat.rng import derive_seed
from ..utils.errors import ConfigError
from .circuit import CentralFD, GradientMethod, QaoaParams, gamma1_derivative

logger = logging.getLogger(__name__)

# an SD this small means every sampled derivative was identical
CENSOR_TOLERANCE = 1e-14


def instance_gradient_sd(ham: CostHamiltonian, p: int, n_param_samples: int, rng: np.random.Generator,
                         method: GradientMethod = CentralFD()) -> float:
    """Sample SD (ddof=1) of dC/dgamma_1 over random parameter draws."""
    if n_param_samples < 2:
        raise ConfigError("need at least two parameter samples for an SD")
    if p < 1:
        raise ConfigError("gradient scans need p >= 1")
    samples = [gamma1_derivative(ham, QaoaParams.random(p, rng), method) for _ in range(n_param_samples)]
    return float(np.std(samples, ddof=1))


def is_censored(sd: float) -> bool:
    return sd < CENSOR_TOLERANCE


@dataclass
class GradientScanPoint:
    ratio: float
    m: int
    mean_inverse_sd: float
    inverse_mean_sd: float
    mean_sd: float
    censored: int
    instance_sds: List[float] = field(default_factory=list)


def aggregate_sds(ratio: float, m: int, sds: Sequence[float]) -> GradientScanPoint:
    """Mean of per-instance 1/SD (censored SDs excluded) and 1/mean SD."""
    kept = np.array([sd for sd in sds if not is_censored(sd)])
    censored = len(sds) - len(kept)
    if censored:
        logger.warning(f"ratio {ratio}: {censored} of {len(sds)} instances have zero gradient SD")
    if len(kept):
        mean_sd = float(kept.mean())
        return GradientScanPoint(ratio, m, float(np.mean(1.0 / kept)), 1.0 / mean_sd, mean_sd, censored, list(sds))
    nan = float("nan")
    return GradientScanPoint(ratio, m, nan, nan, nan, censored, list(sds))


def grad_sd_scan(n: int, k: int, mode: Mode, ratio_grid: Sequence[float], p: int, n_instances: int,
                 n_param_samples: int, seed: int, method: GradientMethod = CentralFD()) -> List[GradientScanPoint]:
    points = []
    for point, ratio in enumerate(ratio_grid):
        m = clauses_for_ratio(n, ratio)
        sds = []
        for j in range(n_instances):
            index = point * n_instances + j
            inst = generate_instance(n, m, k, mode, derive_seed(seed, index, 0))
            rng = np.random.Generator(np.random.Philox(derive_seed(seed, index, 1)))
            sds.append(instance_gradient_sd(build_cost_hamiltonian(inst), p, n_param_samples, rng, method))
        points.append(aggregate_sds(ratio, m, sds))
        logger.info(f"ratio {ratio:.3f}: mean 1/SD = {points[-1].mean_inverse_sd:.4f}")
    return points


@dataclass
class PlateauPoint:
    n: int
    p: int
    mean_sd: float
    sd_stderr: float
    instance_sds: List[float] = field(default_factory=list)


class SlopeFit(NamedTuple):
    slope: float
    stderr: float
    intercept: float


def barren_plateau_scan(k: int, mode: Mode, ratio: float, p_grid: Sequence[int], n_grid: Sequence[int],
                        n_instances: int, n_param_samples: int, seed: int,
                        method: GradientMethod = CentralFD()) -> List[PlateauPoint]:
    """SD(dC/dgamma_1) surface over (n, p) at one clause density."""
    points = []
    for a, n in enumerate(n_grid):
        m = clauses_for_ratio(n, ratio)
        instances = [
            build_cost_hamiltonian(generate_instance(n, m, k, mode, derive_seed(seed, a * n_instances + j, 0)))
            for j in range(n_instances)
        ]
        for b, p in enumerate(p_grid):
            sds = []
            for j, ham in enumerate(instances):
                rng = np.random.Generator(np.random.Philox(derive_seed(seed, a * n_instances + j, b + 1)))
                sds.append(instance_gradient_sd(ham, p, n_param_samples, rng, method))
            points.append(plateau_point(n, p, sds))
    return points


def plateau_point(n: int, p: int, sds: Sequence[float]) -> PlateauPoint:
    values = np.asarray(sds, dtype=np.float64)
    stderr = float(values.std(ddof=1) / np.sqrt(len(values))) if len(values) > 1 else float("nan")
    return PlateauPoint(n, p, float(values.mean()), stderr, list(sds))


def plateau_slope(points: Sequence[PlateauPoint], p: int) -> SlopeFit:
    """Least-squares slope of log SD against n, over every uncensored instance at depth p."""
    xs, ys = [], []
    for point in points:
        if point.p != p:
            continue
        for sd in point.instance_sds:
            if not is_censored(sd):
                xs.append(point.n)
                ys.append(np.log(sd))
    if len(set(xs)) < 2:
        raise ConfigError("need at least two system sizes to fit a slope")
    fit = linregress(xs, ys)
    return SlopeFit(float(fit.slope), float(fit.stderr), float(fit.intercept))
