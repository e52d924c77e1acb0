"""
SAT and positive 1-in-k SAT instances.

Bit convention used throughout qptlab: variable i is bit i of a basis
index; bit value 1 means the variable is true (spin down, sigma_z = -1).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..utils.errors import CapacityError, DimensionError, InvalidDimensionError
from .rng import SplitMix64

logger = logging.getLogger(__name__)

# 2**26 basis states is the largest vector we are willing to enumerate
ENUMERATION_LIMIT = 26


class Mode(str, Enum):
    """Clause semantics."""

    KSAT = "ksat"
    ONE_IN_K = "oneink"


@dataclass(frozen=True)
class Clause:
    """k distinct variables with signs; ascending variable order is canonical."""

    variables: Tuple[int, ...]
    signs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.variables) != len(self.signs):
            raise InvalidDimensionError("clause variables and signs differ in length")
        if len(self.variables) not in (2, 3):
            raise InvalidDimensionError(f"clause arity {len(self.variables)} is not 2 or 3")
        if len(set(self.variables)) != len(self.variables):
            raise InvalidDimensionError(f"clause repeats a variable: {self.variables}")
        if any(s not in (1, -1) for s in self.signs):
            raise InvalidDimensionError(f"clause signs must be +1 or -1: {self.signs}")
        if list(self.variables) != sorted(self.variables):
            raise InvalidDimensionError("clause variables must be in ascending order")
        if self.variables[0] < 0:
            raise InvalidDimensionError(f"clause variable indices must be non-negative: {self.variables}")

    @classmethod
    def of(cls, literals: Iterable[Tuple[int, int]]) -> "Clause":
        """Build from (variable, sign) pairs in any order."""
        ordered = sorted(literals)
        return cls(tuple(v for v, _ in ordered), tuple(s for _, s in ordered))

    @property
    def k(self) -> int:
        return len(self.variables)

    @property
    def literals(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(zip(self.variables, self.signs))

    def is_satisfied(self, bits: Sequence[bool], mode: Mode) -> bool:
        if mode is Mode.ONE_IN_K:
            return sum(bool(bits[v]) for v in self.variables) == 1
        return any(bool(bits[v]) == (s > 0) for v, s in self.literals)


@dataclass(frozen=True)
class SatInstance:
    n: int
    k: int
    mode: Mode
    clauses: Tuple[Clause, ...]
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.k not in (2, 3):
            raise InvalidDimensionError(f"k must be 2 or 3, got {self.k}")
        if self.n < self.k:
            raise InvalidDimensionError(f"need n >= k, got n={self.n}, k={self.k}")
        for clause in self.clauses:
            if clause.k != self.k:
                raise InvalidDimensionError(f"clause {clause.variables} has arity {clause.k}, expected {self.k}")
            if clause.variables[-1] >= self.n:
                raise InvalidDimensionError(f"clause {clause.variables} exceeds n={self.n}")
            if self.mode is Mode.ONE_IN_K and any(s != 1 for s in clause.signs):
                raise InvalidDimensionError("1-in-k clauses take positive literals only")

    @property
    def m(self) -> int:
        return len(self.clauses)

    @property
    def ratio(self) -> float:
        return self.m / self.n


@dataclass(frozen=True)
class Assignment:
    """Truth values; bits[i] is True when variable i is true."""

    bits: Tuple[bool, ...]

    @classmethod
    def from_index(cls, index: int, n: int) -> "Assignment":
        return cls(tuple(bool((index >> i) & 1) for i in range(n)))

    def to_index(self) -> int:
        return sum(1 << i for i, b in enumerate(self.bits) if b)

    def __len__(self) -> int:
        return len(self.bits)


def clauses_for_ratio(n: int, ratio: float) -> int:
    """Clause count m = round(ratio * n)."""
    return int(round(ratio * n))


def generate_instance(n: int, m: int, k: int, mode: Mode, seed: int,
                      reject_duplicates: bool = False) -> SatInstance:
    """
    Draw m clauses independently and uniformly.

    Each clause takes k distinct variables; signs are fair coins in k-SAT
    mode and all positive in 1-in-k mode. With ``reject_duplicates`` a clause
    equal to an earlier one is redrawn.
    """
    if k not in (2, 3):
        raise InvalidDimensionError(f"k must be 2 or 3, got {k}")
    if n < k:
        raise InvalidDimensionError(f"need n >= k, got n={n}, k={k}")
    if m < 0:
        raise InvalidDimensionError(f"clause count must be non-negative, got {m}")
    mode = Mode(mode)

    if reject_duplicates:
        distinct = comb(n, k) * (2 ** k if mode is Mode.KSAT else 1)
        if m > distinct:
            raise CapacityError("distinct clauses", m, distinct)

    rng = SplitMix64(seed)
    clauses: List[Clause] = []
    seen: Set[Clause] = set()
    while len(clauses) < m:
        variables = rng.sample_distinct(n, k)
        if mode is Mode.KSAT:
            signs = tuple(1 if rng.coin() else -1 for _ in range(k))
        else:
            signs = (1,) * k
        clause = Clause(variables, signs)
        if reject_duplicates:
            if clause in seen:
                continue
            seen.add(clause)
        clauses.append(clause)

    logger.debug(f"Generated {mode.value} instance n={n} m={m} k={k} seed={seed}")
    return SatInstance(n=n, k=k, mode=mode, clauses=tuple(clauses), seed=seed)


def count_violations(inst: SatInstance, a: Assignment) -> int:
    """Number of clauses not satisfied by the assignment."""
    if len(a.bits) != inst.n:
        raise DimensionError(f"assignment has length {len(a.bits)}, instance has n={inst.n}")
    return sum(1 for clause in inst.clauses if not clause.is_satisfied(a.bits, inst.mode))


def basis_bits(n: int) -> np.ndarray:
    """(n, 2**n) array of bit values, row i holding bit i of every basis index."""
    if n > ENUMERATION_LIMIT:
        raise CapacityError("basis enumeration qubits", n, ENUMERATION_LIMIT)
    index = np.arange(1 << n, dtype=np.int64)
    return np.stack([(index >> i) & 1 for i in range(n)]).astype(np.int8)


def clause_true_counts(inst: SatInstance, bits: Optional[np.ndarray] = None) -> Iterator[np.ndarray]:
    """Yield, clause by clause, the number of true literals on every basis state."""
    if bits is None:
        bits = basis_bits(inst.n)
    for clause in inst.clauses:
        counts = np.zeros(bits.shape[1], dtype=np.int64)
        for v, s in clause.literals:
            counts += bits[v] if s > 0 else 1 - bits[v]
        yield counts


def violation_vector(inst: SatInstance) -> np.ndarray:
    """Violation count of every basis state, as an int64 vector of length 2**n."""
    bits = basis_bits(inst.n)
    total = np.zeros(bits.shape[1], dtype=np.int64)
    for counts in clause_true_counts(inst, bits):
        if inst.mode is Mode.ONE_IN_K:
            total += counts != 1
        else:
            total += counts == 0
    return total
