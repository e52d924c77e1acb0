"""
QAOA evaluation, gradients, training, gradient scans and gate export.
"""

from .circuit import (
    QaoaParams,
    Adjoint,
    CentralFD,
    evolve,
    cost,
    cost_and_gradient,
    gradient,
    gamma1_derivative,
)
from .training import (
    RandomInit,
    PreOptimizedInit,
    StopCriteria,
    StopReason,
    TrainResult,
    AccuracyReport,
    Decision,
    InitKind,
    train,
    train_cascade,
    accuracy_report,
    solve_with_repetitions,
)
from .gradient_scan import (
    instance_gradient_sd,
    grad_sd_scan,
    barren_plateau_scan,
    plateau_slope,
)
from .gates import Gate, export_gate_list, format_gate_list

__all__ = [
    'QaoaParams',
    'Adjoint',
    'CentralFD',
    'evolve',
    'cost',
    'cost_and_gradient',
    'gradient',
    'gamma1_derivative',
    'RandomInit',
    'PreOptimizedInit',
    'StopCriteria',
    'StopReason',
    'TrainResult',
    'AccuracyReport',
    'Decision',
    'InitKind',
    'train',
    'train_cascade',
    'accuracy_report',
    'solve_with_repetitions',
    'instance_gradient_sd',
    'grad_sd_scan',
    'barren_plateau_scan',
    'plateau_slope',
    'Gate',
    'export_gate_list',
    'format_gate_list',
]
