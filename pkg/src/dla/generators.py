"""
QAOA generator pairs and ensemble scans of the dynamical Lie algebra dimension.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from scipy.stats import spearmanr

from ..hamiltonian.coefficients import IsingTerms
from ..hamiltonian.cost import CostHamiltonian, SymmetricVariant, build_cost_hamiltonian, build_symmetric_hamiltonian
from ..sat.instance import Mode, clauses_for_ratio, generate_instance
from ..sat.rng import derive_seed
from ..utils.errors import CapacityError
from .closure import LieClosure, lie_closure, lower_expectation_report
from .pauli import PauliElement, PauliString

logger = logging.getLogger(__name__)

MAX_DLA_QUBITS = 7


def _z_string(n: int, qubits: Sequence[int]) -> PauliString:
    z = 0
    for q in qubits:
        z |= 1 << q
    return PauliString(0, z, n)


def terms_element(terms: IsingTerms) -> PauliElement:
    """The Ising expansion as a Pauli element, constant dropped."""
    n = terms.n
    out = {}
    for i, w in terms.linear.items():
        out[_z_string(n, (i,))] = w
    for qubits, w in list(terms.quadratic.items()) + list(terms.cubic.items()):
        out[_z_string(n, qubits)] = w
    return PauliElement(n, out)


def mixer_element(n: int) -> PauliElement:
    return PauliElement(n, {PauliString(1 << i, 0, n): 1 for i in range(n)})


def qaoa_generators(ham: CostHamiltonian) -> Tuple[PauliElement, PauliElement]:
    """(H_C, H_B) with H_B the unweighted transverse field."""
    return terms_element(ham.terms), mixer_element(ham.n)


def symmetric_generators(n: int, variant: SymmetricVariant) -> Tuple[PauliElement, PauliElement]:
    return qaoa_generators(build_symmetric_hamiltonian(n, variant))


def instance_closure(ham: CostHamiltonian, method: str = "auto") -> LieClosure:
    """Closure of the non-zero members of (H_C, H_B)."""
    gens = [g for g in qaoa_generators(ham) if not g.is_zero()]
    return lie_closure(gens, method=method)


@dataclass
class DlaScanPoint:
    ratio: float
    m: int
    mean_dim: float
    stderr: float
    dims: List[int] = field(default_factory=list)


def dla_scan(n: int, k: int, mode: Mode, ratio_grid: Sequence[float], n_instances: int, seed: int,
             method: str = "auto") -> List[DlaScanPoint]:
    """
    Mean closure dimension per clause density. Instance seeds follow the
    gradient scan's, so both scans see the same instances.
    """
    if n > MAX_DLA_QUBITS:
        raise CapacityError("DLA scan qubits", n, MAX_DLA_QUBITS)
    points = []
    for point, ratio in enumerate(ratio_grid):
        m = clauses_for_ratio(n, ratio)
        dims = []
        for j in range(n_instances):
            inst = generate_instance(n, m, k, mode, derive_seed(seed, point * n_instances + j, 0))
            dims.append(instance_closure(build_cost_hamiltonian(inst), method).dim)
        values = np.asarray(dims, dtype=np.float64)
        stderr = float(values.std(ddof=1) / np.sqrt(len(values))) if len(values) > 1 else float("nan")
        points.append(DlaScanPoint(ratio, m, float(values.mean()), stderr, dims))
        logger.info(f"ratio {ratio:.3f}: mean dim(g) = {values.mean():.1f}")
    return points


def rank_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman rank correlation; nan when either series is constant."""
    if len(xs) != len(ys):
        raise ValueError("series lengths differ")
    if len(set(xs)) < 2 or len(set(ys)) < 2:
        return float("nan")
    rho, _ = spearmanr(xs, ys)
    return float(rho)


def symmetric_dimension(n: int, variant: SymmetricVariant, method: str = "auto") -> int:
    """Closure dimension of the symmetric-limit generators, with the n^2 expectation reported."""
    hc, hb = symmetric_generators(n, variant)
    dim = lie_closure([hc, hb], method=method).dim
    lower_expectation_report(dim, n)
    return dim
