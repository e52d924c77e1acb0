"""
Per-grid-point aggregation of experiment records.
"""

import csv
import logging
import math
from collections import defaultdict
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict
from rich.table import Table

from ..qaoa.gradient_scan import is_censored
from .records import ExperimentRecord, format_float

logger = logging.getLogger(__name__)

SUMMARY_FIELDS = ["experiment", "metric", "n", "p", "ratio", "cutoff", "count", "mean", "median", "sd", "se"]

GroupKey = Tuple[str, str, int, int, float, int]

# averaged per instance as "grad_sd"; the mean SD inverted is reported alongside
_INVERTED_MEANS = {"grad_sd": "inverse_mean_grad_sd"}


class SummaryRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    experiment: str
    metric: str
    n: int
    p: Optional[int] = None
    ratio: float
    cutoff: Optional[int] = None
    count: int
    mean: float
    median: float
    sd: Optional[float] = None
    se: Optional[float] = None


def _group_key(record: ExperimentRecord) -> GroupKey:
    return (record.experiment, record.metric, record.n, -1 if record.p is None else record.p, record.ratio,
            -1 if record.cutoff is None else record.cutoff)


def _row(key: GroupKey, metric: str, values: np.ndarray) -> SummaryRow:
    experiment, _, n, p, ratio, cutoff = key
    count = len(values)
    sd = float(values.std(ddof=1)) if count > 1 else None
    return SummaryRow(
        experiment=experiment,
        metric=metric,
        n=n,
        p=None if p < 0 else p,
        ratio=ratio,
        cutoff=None if cutoff < 0 else cutoff,
        count=count,
        mean=float(values.mean()),
        median=float(np.median(values)),
        sd=sd,
        se=None if sd is None else sd / math.sqrt(count),
    )


def _inverted_mean(key: GroupKey, metric: str, values: np.ndarray) -> Optional[SummaryRow]:
    """1 / mean over the uncensored values; count is the number of values kept."""
    kept = np.asarray([v for v in values if not is_censored(v)], dtype=np.float64)
    dropped = values.size - kept.size
    if dropped:
        logger.info(f"{metric} at n={key[2]} ratio={key[4]}: {dropped} censored rows left out of the inverted mean")
    if kept.size == 0:
        return None
    row = _row(key, _INVERTED_MEANS[metric], np.asarray([1.0 / kept.mean()]))
    return row.model_copy(update={"count": int(kept.size)})


def summarize(records: Iterable[ExperimentRecord]) -> List[SummaryRow]:
    """
    Count, mean, median, sample SD and standard error per
    (experiment, metric, n, p, ratio, cutoff). NaN values (censored points)
    are left out; a group left empty is omitted with a warning.
    """
    groups: Dict[GroupKey, List[float]] = defaultdict(list)
    for record in records:
        groups[_group_key(record)].append(record.value)

    rows = []
    for key in sorted(groups):
        values = np.asarray(groups[key], dtype=np.float64)
        values = values[~np.isnan(values)]
        metric = key[1]
        if values.size == 0:
            logger.warning(f"no finite values for {metric} at n={key[2]} ratio={key[4]}; group omitted")
            continue
        rows.append(_row(key, metric, values))
        if metric in _INVERTED_MEANS:
            inverted = _inverted_mean(key, metric, values)
            if inverted is not None:
                rows.append(inverted)
    return rows


def render_summary(rows: List[SummaryRow], title: str = "Summary") -> Table:
    table = Table(title=title)
    for name in SUMMARY_FIELDS:
        table.add_column(name, justify="left" if name in ("experiment", "metric") else "right")
    for row in rows:
        table.add_row(
            row.experiment,
            row.metric,
            str(row.n),
            "" if row.p is None else str(row.p),
            f"{row.ratio:g}",
            "" if row.cutoff is None else str(row.cutoff),
            str(row.count),
            f"{row.mean:.6g}",
            f"{row.median:.6g}",
            "" if row.sd is None else f"{row.sd:.4g}",
            "" if row.se is None else f"{row.se:.4g}",
        )
    return table


def write_summary(path: Union[str, Path], rows: List[SummaryRow]) -> Path:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SUMMARY_FIELDS)
        for row in rows:
            writer.writerow([
                row.experiment,
                row.metric,
                row.n,
                "" if row.p is None else row.p,
                format_float(row.ratio),
                "" if row.cutoff is None else row.cutoff,
                row.count,
                format_float(row.mean),
                format_float(row.median),
                format_float(row.sd),
                format_float(row.se),
            ])
    return path
