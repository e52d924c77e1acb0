"""
Sweep configuration: one validated model per run, from CLI flags or a YAML file.
"""

import hashlib
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, Literal, Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from ..dla.generators import MAX_DLA_QUBITS
from ..otoc.otoc import TraceMethod
from ..qaa.anneal import GapMode
from ..qaoa.training import InitKind
from ..sat.instance import Mode
from ..utils.errors import ConfigError

logger = logging.getLogger(__name__)

GRID_TOLERANCE = 1e-9
# fields that name where results go rather than what is computed
_UNHASHED = {"out"}


class ExperimentKind(str, Enum):
    SATPROB = "satprob"
    GRADSCAN = "gradscan"
    PLATEAU = "plateau"
    DLASCAN = "dlascan"
    OTOC = "otoc"
    QAOA_SOLVE = "qaoa-solve"
    QAA = "qaa"
    MWIS = "mwis"


_DEFAULT_SAMPLES = {ExperimentKind.OTOC: 20}
_PARAMETRIZED = {ExperimentKind.GRADSCAN, ExperimentKind.PLATEAU, ExperimentKind.OTOC, ExperimentKind.QAOA_SOLVE}


def parse_grid(text: Union[str, float, int, List], cast: Callable[[str], Any] = float) -> List:
    """``a:b:step`` (b included within 1e-9) or a comma list."""
    if isinstance(text, (list, tuple)):
        return [cast(v) for v in text]
    if isinstance(text, (int, float)):
        return [cast(text)]
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range grid must be a:b:step, got {text!r}")
        start, stop, step = (float(v) for v in parts)
        if step <= 0 or stop < start:
            raise ValueError(f"empty or reversed grid {text!r}")
        count = int((stop - start) / step + GRID_TOLERANCE) + 1
        # 0.1:0.5:0.1 must give 0.3, not 0.30000000000000004
        return [cast(round(start + i * step, 12)) for i in range(count)]
    return [cast(v) for v in text.split(",") if v.strip()]


class SweepConfig(BaseModel):
    """Every knob of a sweep; keys mirror the CLI flags with dashes as underscores."""

    model_config = ConfigDict(frozen=True, extra="forbid", use_enum_values=False)

    experiment: ExperimentKind
    n: int = Field(10, ge=1)
    k: int = 3
    mode: Mode = Mode.KSAT
    ratios: List[float] = Field(default_factory=lambda: [1.0])
    p: List[int] = Field(default_factory=lambda: [1])
    instances: int = Field(100, ge=1)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    out: Optional[Path] = None
    reject_duplicates: bool = False

    # qaoa-solve
    reps: int = Field(10, ge=1)
    eth: float = 0.5
    energy_decision: bool = False
    init: InitKind = InitKind.PREOPT
    epsilon: float = Field(0.1, gt=0)
    max_steps: int = Field(10000, ge=1)
    cutoffs: List[int] = Field(default_factory=list)

    # gradscan / plateau / otoc
    samples: Optional[int] = Field(None, ge=1)
    n_grid: List[int] = Field(default_factory=list)
    gradient: Literal["fd", "adjoint"] = "fd"
    trace_method: TraceMethod = TraceMethod.AUTO
    probes: int = Field(32, ge=1)

    # dlascan
    dla_method: Literal["auto", "rational", "modular"] = "auto"

    # qaa
    ta: float = Field(50.0, gt=0)
    anneal_steps: int = Field(10000, ge=1)
    s_points: int = Field(201, ge=3)
    gap_mode: GapMode = GapMode.GROUND_SPACE

    @field_validator("ratios", mode="before")
    @classmethod
    def _ratio_grid(cls, value):
        return parse_grid(value, float)

    @field_validator("p", "n_grid", "cutoffs", mode="before")
    @classmethod
    def _int_grid(cls, value):
        return parse_grid(value, lambda v: int(float(v)))

    @field_validator("k")
    @classmethod
    def _arity(cls, value: int) -> int:
        if value not in (2, 3):
            raise ValueError(f"k must be 2 or 3, got {value}")
        return value

    @model_validator(mode="after")
    def _consistent(self) -> "SweepConfig":
        if not self.ratios:
            raise ValueError("ratio grid is empty")
        if any(r < 0 for r in self.ratios):
            raise ValueError("ratios must be non-negative")
        if list(self.ratios) != sorted(self.ratios):
            raise ValueError("ratio grid must be sorted")
        if not self.p or any(p < 0 for p in self.p):
            raise ValueError("p grid must be non-empty with p >= 0")
        if any(c < 1 for c in self.cutoffs):
            raise ValueError("step cutoffs must be at least 1")
        for n in [self.n, *self.n_grid]:
            if n < self.k:
                raise ValueError(f"need n >= k, got n={n}, k={self.k}")
        if self.experiment is ExperimentKind.MWIS and self.mode is not Mode.ONE_IN_K:
            raise ValueError("the mwis experiment needs --mode oneink")
        if self.experiment is ExperimentKind.DLASCAN and self.n > MAX_DLA_QUBITS:
            raise ValueError(f"dlascan supports at most {MAX_DLA_QUBITS} qubits, got n={self.n}")
        if self.experiment in (ExperimentKind.GRADSCAN, ExperimentKind.PLATEAU) and min(self.p) < 1:
            raise ValueError("gradient scans need p >= 1")
        if self.experiment in (ExperimentKind.GRADSCAN, ExperimentKind.PLATEAU) and self.samples == 1:
            raise ValueError("gradient scans need at least two parameter samples")
        return self

    @classmethod
    def build(cls, data: Dict[str, Any]) -> "SweepConfig":
        """Validate, turning pydantic errors into ConfigError."""
        try:
            return cls(**{key.replace("-", "_"): value for key, value in data.items() if value is not None})
        except ValidationError as e:
            raise ConfigError(f"invalid sweep configuration: {e}") from e

    @classmethod
    def from_file(cls, path: Union[str, Path], **overrides: Any) -> "SweepConfig":
        """Load a YAML key-value file; non-None ``overrides`` win over file values."""
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        if not isinstance(data, dict):
            raise ConfigError(f"{path} must hold a key-value mapping")
        data = {str(key).replace("-", "_"): value for key, value in data.items()}
        data.update({key: value for key, value in overrides.items() if value is not None})
        logger.debug(f"Loaded sweep config from {path}")
        return cls.build(data)

    @property
    def resolved_samples(self) -> int:
        if self.samples is not None:
            return self.samples
        return _DEFAULT_SAMPLES.get(self.experiment, 100)

    @property
    def resolved_cutoffs(self) -> List[int]:
        return list(self.cutoffs) or [self.max_steps]

    @property
    def resolved_n_grid(self) -> List[int]:
        return list(self.n_grid) or [self.n]

    @property
    def uses_p(self) -> bool:
        return self.experiment in _PARAMETRIZED

    def canonical_json(self) -> str:
        data = self.model_dump(mode="json", exclude=_UNHASHED)
        return json.dumps(data, sort_keys=True, separators=(",", ":"))

    def config_hash(self) -> str:
        """sha256 of the canonical JSON form, output path excluded."""
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()

    def output_path(self, output_dir: Union[str, Path] = "results") -> Path:
        if self.out is not None:
            return Path(self.out)
        return Path(output_dir) / f"{self.experiment.value}-{self.config_hash()[:12]}.csv"
