"""
Experiment records and their CSV form (one metric per row).
"""

import csv
import math
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict

from ..utils.errors import ConfigError

CSV_FIELDS = [
    "config_hash",
    "experiment",
    "instance_seed",
    "instance_index",
    "n",
    "p",
    "ratio",
    "m",
    "cutoff",
    "metric",
    "value",
    "stderr",
    "wall_time",
]

TaskKey = Tuple[str, int, int, Optional[int], str, Optional[int]]


def format_float(value: Optional[float]) -> str:
    """17 significant digits so values survive a round trip; None is empty."""
    if value is None:
        return ""
    if math.isnan(value):
        return "nan"
    return f"{value:.17g}"


def _optional_int(text: str) -> Optional[int]:
    return None if text == "" else int(text)


def _optional_float(text: str) -> Optional[float]:
    return None if text == "" else float(text)


class ExperimentRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    config_hash: str
    experiment: str
    instance_seed: int
    instance_index: int
    n: int
    p: Optional[int] = None
    ratio: float
    m: int
    cutoff: Optional[int] = None
    metric: str
    value: float
    stderr: Optional[float] = None
    wall_time: Optional[float] = None

    @property
    def task_key(self) -> TaskKey:
        return task_key(self.config_hash, self.instance_seed, self.n, self.p, self.ratio, self.cutoff)

    def sort_key(self) -> tuple:
        return (self.experiment, self.config_hash, self.n, self.ratio, -1 if self.p is None else self.p,
                -1 if self.cutoff is None else self.cutoff, self.instance_index, self.metric)

    def to_row(self) -> List[str]:
        return [
            self.config_hash,
            self.experiment,
            str(self.instance_seed),
            str(self.instance_index),
            str(self.n),
            "" if self.p is None else str(self.p),
            format_float(self.ratio),
            str(self.m),
            "" if self.cutoff is None else str(self.cutoff),
            self.metric,
            format_float(self.value),
            format_float(self.stderr),
            format_float(self.wall_time),
        ]

    @classmethod
    def from_row(cls, row: dict) -> "ExperimentRecord":
        return cls(
            config_hash=row["config_hash"],
            experiment=row["experiment"],
            instance_seed=int(row["instance_seed"]),
            instance_index=int(row["instance_index"]),
            n=int(row["n"]),
            p=_optional_int(row["p"]),
            ratio=float(row["ratio"]),
            m=int(row["m"]),
            cutoff=_optional_int(row["cutoff"]),
            metric=row["metric"],
            value=float(row["value"]),
            stderr=_optional_float(row["stderr"]),
            wall_time=_optional_float(row["wall_time"]),
        )


def task_key(config_hash: str, instance_seed: int, n: int, p: Optional[int], ratio: float,
             cutoff: Optional[int]) -> TaskKey:
    return (config_hash, instance_seed, n, p, format_float(ratio), cutoff)


def read_records(path: Union[str, Path]) -> List[ExperimentRecord]:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != CSV_FIELDS:
            raise ConfigError(f"{path} is not a qptlab results file (header {reader.fieldnames})")
        return [ExperimentRecord.from_row(row) for row in reader]


def write_records(path: Union[str, Path], records: Iterable[ExperimentRecord]) -> Path:
    """Write a complete file in canonical order."""
    path = Path(path)
    ordered = sorted(records, key=ExperimentRecord.sort_key)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        writer.writerows(r.to_row() for r in ordered)
    return path


class RecordWriter:
    """Single appending writer; the header is written once for a new file."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fresh = not self.path.exists() or self.path.stat().st_size == 0
        self._handle = self.path.open("a", newline="", encoding="utf-8")
        self._writer = csv.writer(self._handle, lineterminator="\n")
        if fresh:
            self._writer.writerow(CSV_FIELDS)

    def write(self, records: Iterable[ExperimentRecord]) -> int:
        count = 0
        for record in records:
            self._writer.writerow(record.to_row())
            count += 1
        self._handle.flush()
        return count

    def close(self) -> None:
        self._handle.close()

    def __enter__(self) -> "RecordWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
