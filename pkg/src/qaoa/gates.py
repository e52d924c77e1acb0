"""
Gate-list export of a QAOA circuit.

Every gate is exp(-i angle P) with P a product of Pauli Z's (RZ, RZZ,
RZZZ) or a single X (RX). The cost layer's global phase exp(-i gamma c)
from the constant term c is dropped.
"""

from typing import Iterable, List, NamedTuple, Tuple

from ..hamiltonian.cost import CostHamiltonian
from .circuit import QaoaParams

_NAMES = {1: "RZ", 2: "RZZ", 3: "RZZZ"}


class Gate(NamedTuple):
    name: str
    qubits: Tuple[int, ...]
    angle: float


def export_gate_list(ham: CostHamiltonian, params: QaoaParams) -> List[Gate]:
    """Per layer: RZ, RZZ, RZZZ for every non-zero Ising weight, then RX on every qubit."""
    terms = ham.terms
    weighted = (
        [((i,), w) for i, w in sorted(terms.linear.items())]
        + sorted(terms.quadratic.items())
        + sorted(terms.cubic.items())
    )
    gates: List[Gate] = []
    for gamma, beta in zip(params.gammas, params.betas):
        for qubits, w in weighted:
            gates.append(Gate(_NAMES[len(qubits)], tuple(qubits), gamma * float(w)))
        gates.extend(Gate("RX", (i,), beta) for i in range(ham.n))
    return gates


def format_gate_list(gates: Iterable[Gate]) -> str:
    """One gate per line: NAME q<i> [q<j> [q<l>]] <angle>, angles to 17 significant digits."""
    lines = []
    for gate in gates:
        qubits = " ".join(f"q{q}" for q in gate.qubits)
        lines.append(f"{gate.name} {qubits} {gate.angle:.17g}")
    return "\n".join(lines) + ("\n" if lines else "")
