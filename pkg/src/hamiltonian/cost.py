"""
Diagonal cost Hamiltonians built from SAT instances.
"""

import logging
import struct
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import NamedTuple, Optional, Union

import numpy as np

from ..sat.instance import (
    ENUMERATION_LIMIT,
    Assignment,
    Clause,
    Mode,
    SatInstance,
    basis_bits,
    clause_true_counts,
    violation_vector,
)
from ..utils.errors import CapacityError, DimensionError, InvalidDimensionError, QptlabError, WrongModeError
from .coefficients import CoefficientTable, IsingTerms, coefficient_table, ising_terms

logger = logging.getLogger(__name__)

DIAG_MAGIC = b"QPTD"
# magic, n, mode code, k, two reserved bytes
DIAG_HEADER = struct.Struct("<4sIBB2x")
_MODE_CODES = {Mode.KSAT: 0, Mode.ONE_IN_K: 1}


class SymmetricVariant(str, Enum):
    ONE_IN_TWO = "oneintwo"
    ONE_IN_THREE = "oneinthree"

    @property
    def k(self) -> int:
        return 2 if self is SymmetricVariant.ONE_IN_TWO else 3


@dataclass(eq=False)
class CostHamiltonian:
    table: CoefficientTable
    diag: np.ndarray
    instance: Optional[SatInstance] = None

    @property
    def n(self) -> int:
        return self.table.n

    @property
    def k(self) -> int:
        return self.table.k

    @property
    def mode(self) -> Mode:
        return self.table.mode

    @property
    def dim(self) -> int:
        return self.diag.shape[0]

    @cached_property
    def terms(self) -> IsingTerms:
        return ising_terms(self.table)

    @cached_property
    def violations(self) -> np.ndarray:
        """Violation count per basis state (differs from diag only for 1-in-3+)."""
        if self.instance is None:
            raise WrongModeError("violation counts need the source instance")
        return violation_vector(self.instance)

    @cached_property
    def ground_energy(self) -> float:
        return float(self.diag.min())

    @cached_property
    def ground_states(self) -> np.ndarray:
        return np.flatnonzero(self.diag == self.diag.min())


def build_cost_hamiltonian(inst: SatInstance) -> CostHamiltonian:
    """Coefficient table plus the diagonal, summed from per-clause penalties."""
    if inst.n > ENUMERATION_LIMIT:
        raise CapacityError("cost Hamiltonian qubits", inst.n, ENUMERATION_LIMIT)
    bits = basis_bits(inst.n)
    diag = np.zeros(1 << inst.n, dtype=np.float64)
    for counts in clause_true_counts(inst, bits):
        if inst.mode is Mode.KSAT:
            diag += counts == 0
        else:
            # (1 - t)^2 for t true members: {1, 0, 1, 4} for t = 0..3
            diag += (1 - counts) ** 2
    diag.setflags(write=False)
    return CostHamiltonian(table=coefficient_table(inst), diag=diag, instance=inst)


def energy(ham: CostHamiltonian, a: Assignment) -> float:
    if len(a.bits) != ham.n:
        raise DimensionError(f"assignment has length {len(a.bits)}, Hamiltonian has n={ham.n}")
    return float(ham.diag[a.to_index()])


def build_symmetric_hamiltonian(n: int, variant: SymmetricVariant) -> CostHamiltonian:
    """
    Fully symmetric limit of the 1-in-k+ Hamiltonian.

    Built from the complete set of k-subsets as clauses, so every J_ij and
    every h_i are equal: for k=2 the Hamiltonian is proportional to
    sum ZZ, for k=3 to 2/(n-1) sum ZZ - sum Z.
    """
    variant = SymmetricVariant(variant)
    k = variant.k
    if n < k:
        raise InvalidDimensionError(f"symmetric {variant.value} needs n >= {k}, got {n}")
    clauses = tuple(Clause(c, (1,) * k) for c in combinations(range(n), k))
    inst = SatInstance(n=n, k=k, mode=Mode.ONE_IN_K, clauses=clauses)
    return build_cost_hamiltonian(inst)


class EnergyExcess(NamedTuple):
    ground_energy: float
    min_violations: int
    excess: float


def energy_violation_excess(ham: CostHamiltonian) -> EnergyExcess:
    """Ground energy against the least violation count; they differ only for 1-in-3+."""
    least = int(ham.violations.min())
    return EnergyExcess(ham.ground_energy, least, ham.ground_energy - least)


class DiagFile(NamedTuple):
    n: int
    mode: Mode
    k: int
    diag: np.ndarray


def write_diag(ham: CostHamiltonian, path: Union[str, Path]) -> Path:
    """Binary dump: QPTD header then 2**n little-endian float64 energies."""
    path = Path(path)
    header = DIAG_HEADER.pack(DIAG_MAGIC, ham.n, _MODE_CODES[ham.mode], ham.k)
    path.write_bytes(header + ham.diag.astype("<f8").tobytes())
    return path


def read_diag(path: Union[str, Path]) -> DiagFile:
    data = Path(path).read_bytes()
    if len(data) < DIAG_HEADER.size:
        raise QptlabError(f"{path}: file too short for a diagonal header")
    magic, n, mode_code, k = DIAG_HEADER.unpack_from(data)
    if magic != DIAG_MAGIC:
        raise QptlabError(f"{path}: bad magic {magic!r}")
    modes = {code: mode for mode, code in _MODE_CODES.items()}
    if mode_code not in modes:
        raise QptlabError(f"{path}: unknown mode code {mode_code}")
    body = data[DIAG_HEADER.size:]
    if len(body) != 8 << n:
        raise DimensionError(f"{path}: expected {1 << n} energies, found {len(body) // 8}")
    return DiagFile(n, modes[mode_code], k, np.frombuffer(body, dtype="<f8").astype(np.float64))
