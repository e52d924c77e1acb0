"""
Brute-force oracles and the Monte-Carlo SAT-probability curve.
"""

import logging
from dataclasses import dataclass, field
from math import sqrt
from typing import List, NamedTuple, Sequence

import numpy as np

from ..utils.errors import CapacityError, ConfigError
from .instance import (
    ENUMERATION_LIMIT,
    Assignment,
    Mode,
    SatInstance,
    clauses_for_ratio,
    generate_instance,
    violation_vector,
)
from .rng import derive_seed

logger = logging.getLogger(__name__)


class MaxSatResult(NamedTuple):
    max_satisfied: int
    witness: Assignment
    ground_degeneracy: int


def brute_force_max_sat(inst: SatInstance) -> MaxSatResult:
    """Exact maximum of satisfied clauses over all 2**n assignments."""
    if inst.n > ENUMERATION_LIMIT:
        raise CapacityError("brute-force variables", inst.n, ENUMERATION_LIMIT)
    violations = violation_vector(inst)
    least = int(violations.min())
    witness_index = int(np.argmin(violations))
    degeneracy = int(np.count_nonzero(violations == least))
    return MaxSatResult(inst.m - least, Assignment.from_index(witness_index, inst.n), degeneracy)


def is_satisfiable(inst: SatInstance) -> bool:
    return brute_force_max_sat(inst).max_satisfied == inst.m


@dataclass
class SatProbabilityPoint:
    ratio: float
    m: int
    probability: float
    stderr: float
    count: int
    seeds: List[int] = field(default_factory=list)


def sat_probability(n: int, k: int, mode: Mode, ratio_grid: Sequence[float],
                    instances_per_point: int, seed: int) -> List[SatProbabilityPoint]:
    """Fraction of satisfiable random instances per ratio, with binomial standard error."""
    if instances_per_point < 1:
        raise ConfigError("instances_per_point must be at least 1")
    curve = []
    for point, ratio in enumerate(ratio_grid):
        m = clauses_for_ratio(n, ratio)
        seeds = [derive_seed(seed, point * instances_per_point + j, 0) for j in range(instances_per_point)]
        sat = sum(is_satisfiable(generate_instance(n, m, k, mode, s)) for s in seeds)
        prob = sat / instances_per_point
        stderr = sqrt(prob * (1 - prob) / instances_per_point)
        logger.debug(f"ratio={ratio:.3f} m={m}: P(SAT)={prob:.3f} +/- {stderr:.3f}")
        curve.append(SatProbabilityPoint(ratio, m, prob, stderr, instances_per_point, seeds))
    return curve


def crossing_ratio(curve: Sequence[SatProbabilityPoint], level: float = 0.5) -> float:
    """Linear interpolation of the first ratio where the probability falls to ``level``."""
    for left, right in zip(curve, curve[1:]):
        if left.probability >= level >= right.probability and left.probability != right.probability:
            frac = (left.probability - level) / (left.probability - right.probability)
            return left.ratio + frac * (right.ratio - left.ratio)
    return float("nan")
