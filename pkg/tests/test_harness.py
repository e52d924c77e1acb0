"""Tests for sweep configuration, records, task enumeration, the runner and summaries."""

import json
import logging
import math

import numpy as np
import pytest

from src.harness import tasks as tasks_module
from src.harness.config import ExperimentKind, SweepConfig, parse_grid
from src.harness.records import (
    CSV_FIELDS,
    ExperimentRecord,
    RecordWriter,
    format_float,
    read_records,
    write_records,
)
from src.harness.summary import SUMMARY_FIELDS, render_summary, summarize, write_summary
from src.harness.sweep import SEED_DERIVATION, meta_path_for, run_sweep
from src.harness.tasks import enumerate_tasks, run_task
from src.qaoa.gradient_scan import grad_sd_scan
from src.sat.instance import Mode
from src.sat.rng import derive_seed
from src.utils.errors import ConfigError, SweepTaskError


def _satprob_cfg(tmp_path, **extra):
    data = dict(experiment="satprob", n=5, k=3, mode="ksat", ratios="0:2:1", instances=3, seed=4,
                out=str(tmp_path / "satprob.csv"))
    data.update(extra)
    return SweepConfig.build(data)


def _record(metric="approx_ratio", value=1.0, index=0, **extra):
    data = dict(config_hash="abc", experiment="qaoa-solve", instance_seed=index, instance_index=index, n=6, p=1,
                ratio=1.0, m=6, cutoff=None, metric=metric, value=value)
    data.update(extra)
    return ExperimentRecord(**data)


class TestParseGrid:
    def test_range_includes_end(self):
        assert parse_grid("0.1:0.5:0.1") == [0.1, 0.2, 0.3, 0.4, 0.5]

    def test_comma_list(self):
        assert parse_grid("1,2, 8", int) == [1, 2, 8]

    def test_scalar_and_list(self):
        assert parse_grid(2.5) == [2.5]
        assert parse_grid([1, 2], int) == [1, 2]

    @pytest.mark.parametrize("text", ["1:0:1", "0:1:0", "0:1"])
    def test_bad_range(self, text):
        with pytest.raises(ValueError):
            parse_grid(text)


class TestSweepConfig:
    def test_defaults(self):
        cfg = SweepConfig.build({"experiment": "gradscan"})
        assert cfg.n == 10 and cfg.k == 3 and cfg.mode is Mode.KSAT
        assert cfg.resolved_samples == 100
        assert SweepConfig.build({"experiment": "otoc"}).resolved_samples == 20

    def test_dashed_keys(self):
        cfg = SweepConfig.build({"experiment": "qaoa-solve", "max-steps": 50, "cutoffs": "10,20"})
        assert cfg.max_steps == 50
        assert cfg.resolved_cutoffs == [10, 20]

    @pytest.mark.parametrize("data", [
        {"experiment": "satprob", "n": 2, "k": 3},
        {"experiment": "satprob", "k": 4},
        {"experiment": "satprob", "ratios": "2,1"},
        {"experiment": "mwis", "mode": "ksat"},
        {"experiment": "dlascan", "n": 8},
        {"experiment": "gradscan", "p": "0,1"},
        {"experiment": "gradscan", "samples": 1},
        {"experiment": "satprob", "colour": "blue"},
        {"experiment": "teleport"},
    ])
    def test_invalid(self, data):
        with pytest.raises(ConfigError):
            SweepConfig.build(data)

    def test_hash_ignores_output_path(self, tmp_path):
        a = _satprob_cfg(tmp_path)
        b = _satprob_cfg(tmp_path, out=str(tmp_path / "elsewhere.csv"))
        assert a.config_hash() == b.config_hash()
        assert a.config_hash() != _satprob_cfg(tmp_path, seed=5).config_hash()

    def test_default_output_path(self):
        cfg = SweepConfig.build({"experiment": "satprob"})
        path = cfg.output_path("runs")
        assert path.parent.name == "runs"
        assert path.name == f"satprob-{cfg.config_hash()[:12]}.csv"

    def test_from_file_with_overrides(self, tmp_path):
        path = tmp_path / "sweep.yml"
        path.write_text("experiment: qaa\nn: 4\nk: 2\nmode: oneink\nratios: \"0.5:1.0:0.5\"\nanneal-steps: 300\n")
        cfg = SweepConfig.from_file(path, n=5, seed=None)
        assert cfg.experiment is ExperimentKind.QAA
        assert cfg.n == 5
        assert cfg.ratios == [0.5, 1.0]
        assert cfg.anneal_steps == 300
        assert cfg.seed == 0

    def test_from_file_missing(self, tmp_path):
        with pytest.raises(ConfigError):
            SweepConfig.from_file(tmp_path / "nope.yml")

    def test_from_file_not_a_mapping(self, tmp_path):
        path = tmp_path / "list.yml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            SweepConfig.from_file(path)


class TestRecords:
    def test_format_float(self):
        assert format_float(None) == ""
        assert format_float(float("nan")) == "nan"
        assert float(format_float(0.1)) == 0.1

    def test_csv_preserves_values(self, tmp_path):
        records = [_record(value=1 / 3, stderr=0.25), _record(metric="log_grad_sd", value=float("nan"), index=1)]
        loaded = read_records(write_records(tmp_path / "r.csv", records))
        assert loaded[0].value == 1 / 3 and loaded[0].stderr == 0.25 and loaded[0].cutoff is None
        assert math.isnan(loaded[1].value)

    def test_canonical_order(self, tmp_path):
        records = [_record(index=2), _record(index=0), _record(metric="aaa", index=0)]
        loaded = read_records(write_records(tmp_path / "r.csv", records))
        assert [(r.instance_index, r.metric) for r in loaded] == [(0, "aaa"), (0, "approx_ratio"), (2, "approx_ratio")]

    def test_writer_header_once(self, tmp_path):
        path = tmp_path / "r.csv"
        with RecordWriter(path) as writer:
            writer.write([_record()])
        with RecordWriter(path) as writer:
            assert writer.write([_record(index=1), _record(index=2)]) == 2
        lines = path.read_text().splitlines()
        assert lines[0] == ",".join(CSV_FIELDS)
        assert len(lines) == 4

    def test_foreign_file_rejected(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("a,b\n1,2\n")
        with pytest.raises(ConfigError):
            read_records(path)


class TestEnumerateTasks:
    def test_satprob_seeds(self, tmp_path, mock_settings):
        cfg = _satprob_cfg(tmp_path)
        tasks = enumerate_tasks(cfg, mock_settings)
        assert len(tasks) == 9
        assert [t.instance_seed for t in tasks] == [derive_seed(4, i, 0) for i in range(9)]
        assert [t.m for t in tasks[::3]] == [0, 5, 10]
        assert all(t.p is None for t in tasks)

    def test_qaoa_solve_expands_depths_and_cutoffs(self, mock_settings):
        cfg = SweepConfig.build({"experiment": "qaoa-solve", "n": 4, "k": 2, "mode": "oneink", "p": "1,2",
                                 "cutoffs": "5,10", "instances": 1})
        tasks = enumerate_tasks(cfg, mock_settings)
        assert [(t.p, t.p_index, t.cutoff) for t in tasks] == [(1, 0, 5), (1, 0, 10), (2, 1, 5), (2, 1, 10)]
        assert len({t.key for t in tasks}) == 4

    def test_plateau_spans_sizes(self, mock_settings):
        cfg = SweepConfig.build({"experiment": "plateau", "k": 2, "mode": "oneink", "n_grid": "3,4",
                                 "instances": 2, "samples": 3})
        tasks = enumerate_tasks(cfg, mock_settings)
        assert [t.n for t in tasks] == [3, 3, 4, 4]
        assert [t.instance_index for t in tasks] == [0, 1, 2, 3]

    def test_gradient_task_matches_library_scan(self, mock_settings):
        cfg = SweepConfig.build({"experiment": "gradscan", "n": 4, "k": 2, "mode": "oneink", "ratios": "1.0",
                                 "p": "1", "instances": 2, "samples": 5, "seed": 3})
        task = enumerate_tasks(cfg, mock_settings)[1]
        records = {r.metric: r.value for r in run_task(task)}
        point = grad_sd_scan(4, 2, Mode.ONE_IN_K, [1.0], 1, 2, 5, seed=3)[0]
        assert records["grad_sd"] == pytest.approx(point.instance_sds[1])

    def test_chunk_size_from_settings(self, mock_settings):
        cfg = SweepConfig.build({"experiment": "otoc", "n": 4, "k": 2, "mode": "oneink", "instances": 1})
        assert enumerate_tasks(cfg, mock_settings)[0].chunk_size == 64


class TestRunTask:
    def test_satprob_metrics(self, tmp_path, mock_settings):
        task = enumerate_tasks(_satprob_cfg(tmp_path), mock_settings)[0]
        records = run_task(task)
        assert {r.metric for r in records} == {"satisfiable", "max_satisfied", "ground_degeneracy"}
        assert all(r.wall_time is None for r in records)
        # zero clauses: every assignment is a ground state
        assert {r.metric: r.value for r in records}["ground_degeneracy"] == 32

    def test_mwis_metrics(self, mock_settings):
        cfg = SweepConfig.build({"experiment": "mwis", "n": 6, "k": 3, "mode": "oneink", "instances": 1})
        values = {r.metric: r.value for r in run_task(enumerate_tasks(cfg, mock_settings)[0])}
        assert values["greedy_weight"] <= values["mwis_weight"]
        assert {"weight_GWMIN", "bound_WG"} <= set(values)

    def test_qaoa_solve_metrics(self, mock_settings):
        cfg = SweepConfig.build({"experiment": "qaoa-solve", "n": 4, "k": 3, "mode": "oneink", "ratios": "0.5",
                                 "p": "1", "instances": 1, "reps": 2, "max_steps": 20})
        values = {r.metric: r.value for r in run_task(enumerate_tasks(cfg, mock_settings)[0])}
        assert 0.0 <= values["approx_ratio"] <= 1.0
        assert values["energy_excess"] >= 0
        assert values["final_cost"] <= values["initial_cost"] + 1e-12

    def test_failure_carries_seed(self, tmp_path, mock_settings, monkeypatch):
        def boom(task):
            raise RuntimeError("kaboom")

        monkeypatch.setitem(tasks_module._RUNNERS, ExperimentKind.SATPROB, boom)
        task = enumerate_tasks(_satprob_cfg(tmp_path), mock_settings)[2]
        with pytest.raises(SweepTaskError) as excinfo:
            run_task(task)
        assert excinfo.value.instance_seed == task.instance_seed
        assert "kaboom" in str(excinfo.value)


class TestRunSweep:
    def test_writes_records_and_meta(self, tmp_path, mock_settings):
        cfg = _satprob_cfg(tmp_path)
        result = run_sweep(cfg, mock_settings, workers=1)
        assert result.completed == 9 and result.skipped == 0
        assert len(read_records(result.path)) == 27
        meta = json.loads(meta_path_for(result.path).read_text())
        assert meta["config_hash"] == cfg.config_hash()
        assert meta["seed_derivation"] == SEED_DERIVATION
        assert "numpy" in meta["versions"]

    def test_rerun_skips_everything(self, tmp_path, mock_settings):
        cfg = _satprob_cfg(tmp_path)
        first = run_sweep(cfg, mock_settings, workers=1).path.read_bytes()
        again = run_sweep(cfg, mock_settings, workers=1)
        assert again.completed == 0 and again.skipped == 9
        assert again.path.read_bytes() == first

    def test_resume_after_interruption(self, tmp_path, mock_settings):
        cfg = _satprob_cfg(tmp_path)
        full = run_sweep(cfg, mock_settings, workers=1).path.read_bytes()
        path = tmp_path / "satprob.csv"
        # header plus the three rows of the first task
        path.write_text("\n".join(full.decode().splitlines()[:4]) + "\n")
        resumed = run_sweep(cfg, mock_settings, workers=1)
        assert resumed.completed == 8 and resumed.skipped == 1
        assert path.read_bytes() == full

    @pytest.mark.parametrize("workers", [4, 16])
    @pytest.mark.parametrize("experiment", ["satprob", "gradscan"])
    def test_worker_count_does_not_change_output(self, tmp_path, mock_settings, workers, experiment):
        mock_settings.threads = 16
        extra = {} if experiment == "satprob" else dict(experiment="gradscan", k=2, mode="oneink", samples=4)
        serial = run_sweep(_satprob_cfg(tmp_path, **extra), mock_settings, workers=1).path.read_bytes()
        parallel = run_sweep(_satprob_cfg(tmp_path, out=str(tmp_path / "parallel.csv"), **extra), mock_settings,
                             workers=workers)
        assert parallel.completed == 9
        assert parallel.path.read_bytes() == serial

    def test_resume_drops_truncated_final_row(self, tmp_path, mock_settings, caplog):
        cfg = _satprob_cfg(tmp_path)
        full = run_sweep(cfg, mock_settings, workers=1).path.read_bytes()
        path = tmp_path / "satprob.csv"
        lines = full.decode().splitlines()
        # header, the first task complete, then half of the next row without its newline
        path.write_text("\n".join(lines[:4]) + "\n" + lines[4][: len(lines[4]) // 2])
        with caplog.at_level(logging.WARNING):
            resumed = run_sweep(cfg, mock_settings, workers=1)
        assert "truncated" in caplog.text
        assert resumed.completed == 8 and resumed.skipped == 1
        assert path.read_bytes() == full

    def test_default_path_under_output_dir(self, mock_settings):
        cfg = SweepConfig.build({"experiment": "satprob", "n": 3, "instances": 1})
        result = run_sweep(cfg, mock_settings, workers=1)
        assert str(result.path).startswith(mock_settings.output_dir)

    def test_bad_worker_count(self, tmp_path, mock_settings):
        with pytest.raises(ConfigError):
            run_sweep(_satprob_cfg(tmp_path), mock_settings, workers=0)


class TestSummary:
    def test_statistics(self):
        rows = summarize([_record(value=v, index=i) for i, v in enumerate([1.0, 2.0, 100.0])])
        assert len(rows) == 1
        row = rows[0]
        assert row.count == 3
        assert row.median == 2.0
        assert row.mean == pytest.approx(103 / 3)
        assert row.sd == pytest.approx(np.std([1.0, 2.0, 100.0], ddof=1))
        assert row.se == pytest.approx(row.sd / math.sqrt(3))

    def test_single_record_has_no_spread(self):
        row = summarize([_record(value=0.7)])[0]
        assert row.sd is None and row.se is None

    def test_order_invariant(self):
        records = [_record(value=v, index=i, ratio=r) for i, (v, r) in enumerate([(1, 1.0), (3, 2.0), (5, 1.0)])]
        assert summarize(records) == summarize(list(reversed(records)))

    def test_nan_only_group_omitted(self, caplog):
        with caplog.at_level(logging.WARNING):
            rows = summarize([_record(metric="log_grad_sd", value=float("nan"))])
        assert rows == []
        assert "omitted" in caplog.text

    def test_inverse_of_mean_sd(self):
        records = [_record(metric="grad_sd", value=v, index=i) for i, v in enumerate([0.5, 0.25])]
        rows = {r.metric: r for r in summarize(records)}
        assert rows["inverse_mean_grad_sd"].mean == pytest.approx(1 / 0.375)
        assert rows["inverse_mean_grad_sd"].count == 2

    def test_inverse_of_mean_sd_skips_censored_rows(self):
        records = [_record(metric="grad_sd", value=v, index=i) for i, v in enumerate([0.5, 0.25, 0.0])]
        rows = {r.metric: r for r in summarize(records)}
        assert rows["inverse_mean_grad_sd"].mean == pytest.approx(1 / 0.375)
        assert rows["inverse_mean_grad_sd"].count == 2
        assert rows["grad_sd"].count == 3

    def test_all_censored_gives_no_inverse_row(self):
        records = [_record(metric="grad_sd", value=0.0, index=i) for i in range(3)]
        assert [r.metric for r in summarize(records)] == ["grad_sd"]

    def test_write_and_render(self, tmp_path):
        rows = summarize([_record(value=1.0), _record(value=2.0, index=1)])
        path = write_summary(tmp_path / "summary.csv", rows)
        assert path.read_text().splitlines()[0] == ",".join(SUMMARY_FIELDS)
        assert render_summary(rows).row_count == 1
