"""
Ensemble statistics of the Hamiltonian coefficients and random-guess baselines.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, sqrt
from typing import Dict, Tuple

import numpy as np
from scipy.stats import binom

from ..sat.instance import Mode, generate_instance
from ..sat.rng import derive_seed
from ..utils.errors import ConfigError, InvalidDimensionError
from .coefficients import coefficient_table

logger = logging.getLogger(__name__)

MIN_SAMPLES = 30


def pair_probability(n: int, k: int) -> Fraction:
    """Probability that a fixed pair of variables shares a uniformly drawn clause."""
    return Fraction(comb(k, 2), comb(n, 2))


def coupling_distribution(n: int, m: int, k: int) -> np.ndarray:
    """Binomial law of J_ij for 1-in-k+ instances: entry J is P(J_ij = J), J = 0..m."""
    q = float(pair_probability(n, k))
    return binom.pmf(np.arange(m + 1), m, q)


def coupling_moments(n: int, m: int, k: int, mode: Mode) -> Tuple[float, float]:
    """Closed-form mean and variance of one coupling J_ij."""
    q = float(pair_probability(n, k))
    if Mode(mode) is Mode.ONE_IN_K:
        return m * q, m * q * (1 - q)
    # signed products are +-1 with equal probability
    return 0.0, m * q


@dataclass
class CoefficientStatistics:
    n_samples: int
    j_mean: float
    j_mean_se: float
    j_var: float
    h_mean: float
    h_mean_se: float
    h_var: float
    expected_j_mean: float
    expected_j_var: float
    j_frequencies: Dict[int, int] = field(default_factory=dict)


def coefficient_statistics(n: int, m: int, k: int, mode: Mode, n_samples: int,
                           seed: int) -> CoefficientStatistics:
    """
    Empirical moments of J_ij (i < j) and h_i over n_samples random instances.

    Standard errors are taken over per-instance means, since couplings within
    one instance are not independent.
    """
    if n_samples < MIN_SAMPLES:
        raise ConfigError(f"need at least {MIN_SAMPLES} samples, got {n_samples}")
    upper = np.triu_indices(n, 1)
    j_rows = []
    h_rows = []
    for s in range(n_samples):
        table = coefficient_table(generate_instance(n, m, k, mode, derive_seed(seed, s, 0)))
        j_rows.append(table.J[upper])
        h_rows.append(table.h)
    j_values = np.array(j_rows, dtype=np.float64)
    h_values = np.array(h_rows, dtype=np.float64)
    frequencies = Counter(int(v) for v in j_values.ravel())
    expected_mean, expected_var = coupling_moments(n, m, k, mode)

    stats = CoefficientStatistics(
        n_samples=n_samples,
        j_mean=float(j_values.mean()),
        j_mean_se=_mean_se(j_values),
        j_var=float(j_values.var(ddof=1)),
        h_mean=float(h_values.mean()),
        h_mean_se=_mean_se(h_values),
        h_var=float(h_values.var(ddof=1)),
        expected_j_mean=expected_mean,
        expected_j_var=expected_var,
        j_frequencies=dict(sorted(frequencies.items())),
    )
    logger.debug(f"J mean {stats.j_mean:.4f} (expected {expected_mean:.4f}), var {stats.j_var:.4f}")
    return stats


def _mean_se(values: np.ndarray) -> float:
    per_instance = values.mean(axis=1)
    return float(per_instance.std(ddof=1) / sqrt(len(per_instance)))


def random_guess_baseline(k: int, mode: Mode) -> Fraction:
    """Expected satisfied fraction of a uniformly random assignment."""
    if k not in (2, 3):
        raise InvalidDimensionError(f"k must be 2 or 3, got {k}")
    if Mode(mode) is Mode.KSAT:
        return 1 - Fraction(1, 2 ** k)
    return Fraction(k, 2 ** k)

