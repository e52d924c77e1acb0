"""
Main entry point for qptlab.

One subcommand per experiment runs a seeded sweep and writes a CSV of
records plus a JSON sidecar. The remaining subcommands work on single
artifacts:
1. summarize: aggregate a results file per grid point
2. gates: export the gate list of a DIMACS instance for given angles
3. closure: dimension of the Lie closure of a generator file
"""

import os
import sys
import logging
from typing import Any, Callable, Dict, Optional

import click
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler

from . import __version__
from .dla.closure import METHODS, lie_closure
from .dla.pauli import read_generator_file
from .hamiltonian.cost import build_cost_hamiltonian
from .harness.config import ExperimentKind, SweepConfig, parse_grid
from .harness.records import read_records
from .harness.summary import render_summary, summarize, write_summary
from .harness.sweep import run_sweep
from .otoc.otoc import TraceMethod
from .qaa.anneal import GapMode
from .qaoa.circuit import QaoaParams
from .qaoa.gates import export_gate_list, format_gate_list
from .qaoa.training import InitKind
from .sat.dimacs import read_dimacs
from .sat.instance import Mode
from .utils.config import Settings
from .utils.errors import QptlabError

# Load environment variables
load_dotenv()

# Setup logging
logging.basicConfig(
    level=os.getenv("QPTLAB_LOG_LEVEL", "INFO"),
    format=os.getenv("QPTLAB_LOG_FORMAT", "%(asctime)s - %(name)s - %(levelname)s - %(message)s"),
    handlers=[RichHandler()]
)

logger = logging.getLogger(__name__)
console = Console()


class ExperimentRunner:
    """Orchestrates sweeps and summaries for the CLI."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()

    def run(self, cfg: SweepConfig, workers: Optional[int] = None, show_progress: bool = True) -> Dict[str, Any]:
        """
        Run one sweep.

        Returns:
            Dictionary with ``success`` and either ``result`` or ``error``
        """
        try:
            console.print(f"🔬 Running {cfg.experiment.value} sweep (n={cfg.n}, k={cfg.k}, mode={cfg.mode.value}, "
                          f"{len(cfg.ratios)} ratios, {cfg.instances} instances)", style="bold blue")
            result = run_sweep(cfg, self.settings, workers=workers, show_progress=show_progress)
            console.print(f"📄 {result.completed} new tasks, {result.skipped} resumed; results in {result.path}",
                          style="green")
            return {"success": True, "result": result}
        except QptlabError as e:
            logger.error(f"Sweep failed: {e}")
            console.print(f"❌ Error: {e}", style="bold red")
            return {"success": False, "error": str(e)}

    def summarize(self, results_path: str, out: Optional[str] = None) -> Dict[str, Any]:
        try:
            rows = summarize(read_records(results_path))
            console.print(render_summary(rows, title=f"Summary of {results_path}"))
            if out:
                write_summary(out, rows)
                console.print(f"📄 Summary written to {out}", style="green")
            return {"success": True, "rows": rows}
        except QptlabError as e:
            logger.error(f"Summary failed: {e}")
            console.print(f"❌ Error: {e}", style="bold red")
            return {"success": False, "error": str(e)}


def _finish(result: Dict[str, Any]) -> None:
    if result["success"]:
        console.print("🎉 Done!", style="bold green")
    else:
        sys.exit(1)


_SWEEP_OPTIONS = [
    click.option('--n', type=int, help='Number of variables (qubits)'),
    click.option('--k', type=click.Choice(['2', '3']), help='Clause width'),
    click.option('--mode', type=click.Choice([m.value for m in Mode]), help='Clause semantics'),
    click.option('--ratios', help='Clause-to-variable ratios, a:b:step or a comma list'),
    click.option('--p', help='QAOA depth or depth grid'),
    click.option('--instances', type=int, help='Instances per grid point'),
    click.option('--seed', type=int, help='Master seed (unsigned 64-bit)'),
    click.option('--out', type=click.Path(dir_okay=False), help='Results CSV path'),
    click.option('--reject-duplicates', is_flag=True, default=None, help='Redraw repeated clauses'),
    click.option('--reps', type=int, help='Training repetitions per instance'),
    click.option('--eth', type=float, help='Decision threshold on expected violations'),
    click.option('--energy-decision', is_flag=True, default=None, help='Decide on <H_C> instead of violations'),
    click.option('--init', type=click.Choice([i.value for i in InitKind]), help='Parameter initialization'),
    click.option('--epsilon', type=float, help='Spread of fresh layers in pre-optimized init'),
    click.option('--max-steps', type=int, help='Optimizer step cutoff'),
    click.option('--cutoffs', help='Step cutoff grid for qaoa-solve'),
    click.option('--samples', type=int, help='Parameter (gradscan) or unitary (otoc) samples'),
    click.option('--n-grid', help='Qubit-count grid for plateau'),
    click.option('--gradient', type=click.Choice(['fd', 'adjoint']), help='Derivative method for gradient scans'),
    click.option('--trace-method', type=click.Choice([t.value for t in TraceMethod]), help='OTOC trace method'),
    click.option('--probes', type=int, help='Random-phase probes for stochastic OTOC traces'),
    click.option('--dla-method', type=click.Choice(list(METHODS)), help='Lie closure backend'),
    click.option('--ta', type=float, help='Total anneal time'),
    click.option('--anneal-steps', type=int, help='Anneal integration steps'),
    click.option('--s-points', type=int, help='Gap search grid size'),
    click.option('--gap-mode', type=click.Choice([g.value for g in GapMode]), help='Spectral gap definition'),
    click.option('--config-file', type=click.Path(exists=True, dir_okay=False), help='YAML file mirroring the flags'),
    click.option('--workers', type=int, help='Worker processes (capped by QPTLAB_THREADS)'),
    click.option('--progress/--no-progress', default=True, help='Show a progress bar'),
]


def sweep_options(func: Callable) -> Callable:
    for option in reversed(_SWEEP_OPTIONS):
        func = option(func)
    return func


def build_sweep_config(kind: ExperimentKind, config_file: Optional[str], flags: Dict[str, Any]) -> SweepConfig:
    """CLI flags override file values; unset flags are None and fall through."""
    overrides = {key: value for key, value in flags.items() if value is not None}
    if "k" in overrides:
        overrides["k"] = int(overrides["k"])
    overrides["experiment"] = kind
    if config_file:
        return SweepConfig.from_file(config_file, **overrides)
    return SweepConfig.build(overrides)


@click.group()
@click.version_option(__version__, prog_name="qptlab")
def main():
    """QAOA and annealing phase-transition experiments on random SAT ensembles."""


def _experiment_command(kind: ExperimentKind, summary: str) -> None:
    @main.command(name=kind.value, help=summary)
    @sweep_options
    def command(config_file: Optional[str], workers: Optional[int], progress: bool, **flags: Any):
        try:
            cfg = build_sweep_config(kind, config_file, flags)
        except QptlabError as e:
            logger.error(f"Invalid configuration: {e}")
            console.print(f"❌ Error: {e}", style="bold red")
            sys.exit(1)
        _finish(ExperimentRunner().run(cfg, workers=workers, show_progress=progress))


for _kind, _summary in [
    (ExperimentKind.SATPROB, "Probability of satisfiability per clause density."),
    (ExperimentKind.GRADSCAN, "Standard deviation of dC/dgamma_1 per clause density."),
    (ExperimentKind.PLATEAU, "Gradient SD against qubit count (barren plateau scan)."),
    (ExperimentKind.DLASCAN, "Dimension of the dynamical Lie algebra per clause density."),
    (ExperimentKind.OTOC, "Out-of-time-order correlator over the (density, depth) grid."),
    (ExperimentKind.QAOA_SOLVE, "Trained QAOA accuracy and decision success."),
    (ExperimentKind.QAA, "Annealing minimum gap and success probability."),
    (ExperimentKind.MWIS, "Greedy MWIS baselines on the 1-in-k reduction."),
]:
    _experiment_command(_kind, _summary)


@main.command(name="summarize")
@click.argument('results', type=click.Path(exists=True, dir_okay=False))
@click.option('--out', type=click.Path(dir_okay=False), help='Also write the summary as CSV')
def summarize_command(results: str, out: Optional[str]):
    """Aggregate a results CSV per grid point."""
    _finish(ExperimentRunner().summarize(results, out))


@main.command()
@click.argument('instance', type=click.Path(exists=True, dir_okay=False))
@click.option('--gammas', required=True, help='Comma-separated cost angles, one per layer')
@click.option('--betas', required=True, help='Comma-separated mixer angles, one per layer')
@click.option('--out', type=click.Path(dir_okay=False), help='Write the gate list here instead of stdout')
def gates(instance: str, gammas: str, betas: str, out: Optional[str]):
    """Export the QAOA gate list for a DIMACS instance."""
    try:
        ham = build_cost_hamiltonian(read_dimacs(instance))
        params = QaoaParams(tuple(parse_grid(gammas)), tuple(parse_grid(betas)))
        text = format_gate_list(export_gate_list(ham, params))
    except (QptlabError, ValueError) as e:
        logger.error(f"Gate export failed: {e}")
        console.print(f"❌ Error: {e}", style="bold red")
        sys.exit(1)
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
        console.print(f"📄 {len(text.splitlines())} gates written to {out}", style="green")
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument('generators', type=click.Path(exists=True, dir_okay=False))
@click.option('--method', type=click.Choice(list(METHODS)), default='auto', show_default=True)
@click.option('--max-dim', type=int, help='Stop once the basis would exceed this size')
def closure(generators: str, method: str, max_dim: Optional[int]):
    """Dimension of the Lie closure of a generator file."""
    try:
        result = lie_closure(read_generator_file(generators), max_dim=max_dim, method=method)
    except QptlabError as e:
        logger.error(f"Closure failed: {e}")
        console.print(f"❌ Error: {e}", style="bold red")
        sys.exit(1)
    suffix = " (truncated)" if result.truncated else ""
    click.echo(f"dim = {result.dim}{suffix}")


if __name__ == "__main__":
    main()
