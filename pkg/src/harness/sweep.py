"""
Sweep runner: expands a SweepConfig into tasks, runs them on a process pool,
appends records through a single writer and rewrites the file canonically.
"""

import json
import logging
import subprocess
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import metadata
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Set

from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

from ..utils.config import Settings
from ..utils.errors import ConfigError
from .config import SweepConfig
from .records import ExperimentRecord, RecordWriter, TaskKey, read_records, write_records
from .tasks import SweepTask, enumerate_tasks, run_task

logger = logging.getLogger(__name__)

SEED_DERIVATION = "splitmix64"
_VERSIONED = ("qptlab", "numpy", "scipy", "networkx", "pydantic")


@dataclass
class SweepResult:
    path: Path
    meta_path: Path
    completed: int
    skipped: int
    records: List[ExperimentRecord] = field(default_factory=list)


def _git_revision() -> Optional[str]:
    try:
        out = subprocess.run(["git", "rev-parse", "HEAD"], capture_output=True, text=True, timeout=5, check=True)
    except (OSError, subprocess.SubprocessError):
        return None
    return out.stdout.strip() or None


def package_versions() -> Dict[str, Optional[str]]:
    versions: Dict[str, Optional[str]] = {}
    for name in _VERSIONED:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = None
    return versions


def meta_path_for(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


def write_meta(cfg: SweepConfig, path: Path) -> Path:
    """Sidecar with everything needed to reproduce the file."""
    meta = {
        "config": json.loads(cfg.canonical_json()),
        "config_hash": cfg.config_hash(),
        "seed_derivation": SEED_DERIVATION,
        "versions": package_versions(),
        "git_revision": _git_revision(),
    }
    target = meta_path_for(path)
    target.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return target


def _drop_partial_tail(path: Path) -> None:
    """Cut a final row left without its newline by an interrupted write."""
    data = path.read_bytes()
    if not data or data.endswith(b"\n"):
        return
    keep = data.rfind(b"\n") + 1
    logger.warning(f"{path}: dropping a truncated final row ({len(data) - keep} bytes)")
    with path.open("r+b") as handle:
        handle.truncate(keep)


def _existing(path: Path, config_hash: str) -> List[ExperimentRecord]:
    if not path.exists():
        return []
    _drop_partial_tail(path)
    if path.stat().st_size == 0:
        return []
    records = read_records(path)
    foreign = sum(1 for r in records if r.config_hash != config_hash)
    if foreign:
        logger.warning(f"{path} holds {foreign} rows from other configurations; they are kept as-is")
    return records


def _completed_keys(records: List[ExperimentRecord], config_hash: str) -> Set[TaskKey]:
    return {r.task_key for r in records if r.config_hash == config_hash}


def _resolve_workers(requested: Optional[int], settings: Settings) -> int:
    if requested is not None and requested < 1:
        raise ConfigError(f"--workers must be at least 1, got {requested}")
    return min(requested or settings.threads, settings.threads)


def _execute(tasks: List[SweepTask], workers: int) -> Iterator[List[ExperimentRecord]]:
    if workers == 1:
        for task in tasks:
            yield run_task(task)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map keeps task order, so appended rows follow the canonical order
        yield from pool.map(run_task, tasks, chunksize=1)


def run_sweep(cfg: SweepConfig, settings: Optional[Settings] = None, workers: Optional[int] = None,
              show_progress: bool = False) -> SweepResult:
    """
    Run every task of ``cfg`` not already present in the output file.

    Rows are flushed as tasks finish, so an interrupted sweep resumes where it
    stopped. The finished file is rewritten sorted, making it independent of
    worker count and of how often the sweep was resumed.
    """
    settings = settings or Settings()
    path = cfg.output_path(settings.output_dir)
    config_hash = cfg.config_hash()
    workers = _resolve_workers(workers, settings)

    existing = _existing(path, config_hash)
    done = _completed_keys(existing, config_hash)
    tasks = enumerate_tasks(cfg, settings)
    pending = [t for t in tasks if t.key not in done]
    skipped = len(tasks) - len(pending)
    if skipped:
        logger.info(f"Resuming {path}: {skipped} of {len(tasks)} tasks already recorded")
    logger.info(f"Running {len(pending)} {cfg.experiment.value} tasks on {workers} worker(s), hash {config_hash[:12]}")

    new_records: List[ExperimentRecord] = []
    progress = Progress(TextColumn("[bold blue]{task.description}"), BarColumn(), MofNCompleteColumn(),
                        TimeElapsedColumn(), disable=not show_progress)
    with RecordWriter(path) as writer, progress:
        bar = progress.add_task(cfg.experiment.value, total=len(pending))
        for records in _execute(pending, workers):
            writer.write(records)
            new_records.extend(records)
            progress.advance(bar)

    all_records = existing + new_records
    write_records(path, all_records)
    meta = write_meta(cfg, path)
    logger.info(f"Wrote {len(all_records)} rows to {path}")
    return SweepResult(path, meta, len(pending), skipped, sorted(all_records, key=ExperimentRecord.sort_key))
