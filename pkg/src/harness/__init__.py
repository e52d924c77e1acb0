"""
Seeded parallel sweeps, result records and summaries.
"""

from ..sat.rng import derive_seed
from .config import ExperimentKind, SweepConfig, parse_grid
from .records import ExperimentRecord, RecordWriter, read_records, write_records
from .tasks import SweepTask, enumerate_tasks, run_task
from .sweep import SweepResult, run_sweep
from .summary import SummaryRow, summarize, render_summary, write_summary

__all__ = [
    'derive_seed',
    'ExperimentKind',
    'SweepConfig',
    'parse_grid',
    'ExperimentRecord',
    'RecordWriter',
    'read_records',
    'write_records',
    'SweepTask',
    'enumerate_tasks',
    'run_task',
    'SweepResult',
    'run_sweep',
    'SummaryRow',
    'summarize',
    'render_summary',
    'write_summary',
]
