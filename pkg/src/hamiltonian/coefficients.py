"""
Many-body coefficient form of the cost Hamiltonians.

With A_ia the sign of variable i in clause a (zero when absent, +1 for
every member of a 1-in-k clause):

    h_i    = -sum_a A_ia
    J_ij   =  sum_a A_ia A_ja
    K_ijl  =  sum_a A_ia A_ja A_la          (3-SAT only)

and the Ising weights per mode are

    3-SAT    H = -1/8 sum h Z + 1/8 sum J ZZ + 1/8 sum K ZZZ + m/8
    2-SAT    H = -1/4 sum h Z + 1/4 sum J ZZ + m/4
    1-in-3+  H =  1/2 sum h Z + 1/2 sum J ZZ + m
    1-in-2+  H =  1/2 sum J ZZ + m/2
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Tuple

import numpy as np

from ..sat.instance import Mode, SatInstance


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    n: int
    k: int
    mode: Mode
    m: int
    h: np.ndarray
    J: np.ndarray
    K: Dict[Tuple[int, int, int], int]
    occ: np.ndarray

    @property
    def constant(self) -> Fraction:
        return ising_terms(self).constant


@dataclass(frozen=True)
class IsingTerms:
    """Exact weights of the Z, ZZ and ZZZ terms; zero weights are omitted."""

    n: int
    constant: Fraction
    linear: Dict[int, Fraction] = field(default_factory=dict)
    quadratic: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)
    cubic: Dict[Tuple[int, int, int], Fraction] = field(default_factory=dict)

    def scaled(self, factor: Fraction) -> "IsingTerms":
        return IsingTerms(
            n=self.n,
            constant=self.constant * factor,
            linear={i: w * factor for i, w in self.linear.items()},
            quadratic={ij: w * factor for ij, w in self.quadratic.items()},
            cubic={ijl: w * factor for ijl, w in self.cubic.items()},
        )


def coefficient_table(inst: SatInstance) -> CoefficientTable:
    n = inst.n
    h = np.zeros(n, dtype=np.int64)
    J = np.zeros((n, n), dtype=np.int64)
    occ = np.zeros(n, dtype=np.int64)
    K: Dict[Tuple[int, int, int], int] = {}
    with_cubic = inst.mode is Mode.KSAT and inst.k == 3

    for clause in inst.clauses:
        lits = clause.literals
        for v, s in lits:
            h[v] -= s
            occ[v] += 1
        for (i, si), (j, sj) in combinations(lits, 2):
            J[i, j] += si * sj
            J[j, i] += si * sj
        if with_cubic:
            (i, si), (j, sj), (l, sl) = lits
            K[(i, j, l)] = K.get((i, j, l), 0) + si * sj * sl

    K = {key: value for key, value in K.items() if value != 0}
    for array in (h, J, occ):
        array.setflags(write=False)
    return CoefficientTable(n=n, k=inst.k, mode=inst.mode, m=inst.m, h=h, J=J, K=K, occ=occ)


def ising_terms(table: CoefficientTable) -> IsingTerms:
    """Signed, normalized weights of every Pauli-Z term for the table's mode."""
    if table.mode is Mode.KSAT:
        scale = Fraction(1, 2 ** table.k)
        lin_scale, quad_scale, constant = -scale, scale, table.m * scale
    elif table.k == 3:
        lin_scale, quad_scale, constant = Fraction(1, 2), Fraction(1, 2), Fraction(table.m)
    else:
        lin_scale, quad_scale, constant = Fraction(0), Fraction(1, 2), Fraction(table.m, 2)

    linear = {i: lin_scale * int(table.h[i]) for i in range(table.n) if lin_scale and table.h[i]}
    quadratic = {
        (i, j): quad_scale * int(table.J[i, j])
        for i, j in combinations(range(table.n), 2)
        if table.J[i, j]
    }
    cubic = {key: Fraction(value, 8) for key, value in table.K.items()}
    return IsingTerms(n=table.n, constant=constant, linear=linear, quadratic=quadratic, cubic=cubic)


def diag_from_terms(terms: IsingTerms) -> np.ndarray:
    """Energies of all basis states evaluated from the many-body form."""
    index = np.arange(1 << terms.n, dtype=np.int64)
    spins = [1 - 2 * ((index >> i) & 1) for i in range(terms.n)]
    diag = np.full(1 << terms.n, float(terms.constant))
    for i, w in terms.linear.items():
        diag += float(w) * spins[i]
    for (i, j), w in terms.quadratic.items():
        diag += float(w) * spins[i] * spins[j]
    for (i, j, l), w in terms.cubic.items():
        diag += float(w) * spins[i] * spins[j] * spins[l]
    return diag
