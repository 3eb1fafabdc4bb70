"""Harness artifact contract: file set, CSV layout, determinism, gates, CLI."""

import json

import numpy as np
import pytest

import lindbladint.harness as harness
from lindbladint.cli import EXIT_CONFIG, EXIT_GATE, EXIT_OK, main
from lindbladint.config import parse_config_data, preset
from lindbladint.diagnostics import StepDiagnostics
from lindbladint.harness import GateError, run_experiment

BASE = {
    "scheme": "FREE",
    "model": {"kind": "qudit_chain", "levels": 2, "sites": 1, "gamma": 1.0},
    "plan": {"horizon": 1.0, "steps": [4, 8]},
    "oracle": {"enabled": True},
    "output": {"populations": [1, 2]},
}


def config_with(**overrides):
    return parse_config_data({**BASE, **overrides})


def read_csv(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


class TestTrajectoryRuns:
    def test_artifact_set_and_summary_layout(self, tmp_path):
        report = run_experiment(config_with(), tmp_path)
        names = sorted(p.name for p in tmp_path.iterdir())
        assert names == ["config.json", "run.json", "steps_0.125.csv",
                         "steps_0.25.csv", "summary.csv"]
        header, rows = read_csv(tmp_path / "summary.csv")
        assert header == ["scheme", "tau", "error", "log10_tau", "log10_error",
                          "max_abs_trace_dev", "min_min_eig", "max_rank"]
        assert len(rows) == 2
        assert rows[0][0] == "FREE"
        assert float(rows[0][1]) == 0.25
        # first-order halving is visible straight from the summary
        assert float(rows[0][2]) / float(rows[1][2]) == pytest.approx(2.0, abs=0.3)
        assert all(r[-1] == "" for r in rows)  # dense scheme: no rank

    def test_steps_csv_rows_and_populations(self, tmp_path):
        run_experiment(config_with(), tmp_path)
        header, rows = read_csv(tmp_path / "steps_0.25.csv")
        assert header == ["step", "time", "trace_deviation", "min_eig", "rank",
                          "pop_1", "pop_2"]
        assert len(rows) == 5
        assert [r[0] for r in rows] == ["0", "1", "2", "3", "4"]
        assert float(rows[-1][1]) == pytest.approx(1.0)
        # dephasing keeps the diagonals pinned at 1/2
        assert float(rows[-1][5]) == pytest.approx(0.5, abs=1e-12)
        assert rows[0][4] == ""

    def test_run_json_records_and_slope(self, tmp_path):
        report = run_experiment(config_with(), tmp_path)
        data = json.loads((tmp_path / "run.json").read_text())
        assert data["config_hash"] == report.config_hash
        assert data["scheme"] == "FREE"
        assert len(data["records"]) == 2
        assert {r["steps"] for r in data["records"]} == {4, 8}
        assert data["slope"] == report.slope
        assert 0.8 <= data["slope"] <= 1.2
        for record in data["records"]:
            assert record["error"] > 0
            assert record["steps_csv"].startswith("steps_")

    def test_config_copy_round_trips(self, tmp_path):
        cfg = config_with()
        run_experiment(cfg, tmp_path)
        from lindbladint.config import parse_config
        again = parse_config((tmp_path / "config.json").read_text())
        assert again.config_hash() == cfg.config_hash()

    def test_byte_identical_reruns(self, tmp_path):
        cfg = config_with()
        run_experiment(cfg, tmp_path / "a")
        run_experiment(cfg, tmp_path / "b")
        for name in ("summary.csv", "steps_0.25.csv", "steps_0.125.csv", "config.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_oracle_disabled_leaves_error_blank(self, tmp_path):
        report = run_experiment(config_with(oracle={"enabled": False}), tmp_path)
        _, rows = read_csv(tmp_path / "summary.csv")
        assert all(r[2] == "" and r[4] == "" for r in rows)
        assert report.slopes == []
        assert "slope" not in json.loads((tmp_path / "run.json").read_text())


class TestSweepColumns:
    def test_delta_sweep_adds_column_and_filenames(self, tmp_path):
        cfg = config_with(
            scheme="LREE",
            initial_state={"kind": "perturbed", "delta": [0.1, 0.01]},
            tolerances={"tol1": 1e-10, "tol2": 1e-10},
        )
        run_experiment(cfg, tmp_path)
        header, rows = read_csv(tmp_path / "summary.csv")
        assert header[0] == "delta"
        assert len(rows) == 4
        assert (tmp_path / "steps_delta0.1_0.25.csv").exists()
        assert (tmp_path / "steps_delta0.01_0.125.csv").exists()

    def test_eps2_sweep_column(self, tmp_path):
        cfg = config_with(
            scheme="LREE",
            tolerances={"tol2": {"eps2": [1e-2, 1e-6]}},
        )
        report = run_experiment(cfg, tmp_path)
        header, rows = read_csv(tmp_path / "summary.csv")
        assert header[0] == "eps2"
        assert {float(r[0]) for r in rows} == {1e-2, 1e-6}
        assert (tmp_path / "steps_eps20.01_0.25.csv").exists()
        assert len(report.slopes) == 2

    def test_lree_reports_rank(self, tmp_path):
        cfg = config_with(scheme="LREE", tolerances={"tol1": 1e-12, "tol2": 1e-12})
        run_experiment(cfg, tmp_path)
        _, rows = read_csv(tmp_path / "summary.csv")
        assert all(int(r[-1]) >= 1 for r in rows)
        _, step_rows = read_csv(tmp_path / "steps_0.25.csv")
        assert step_rows[1][4].isdigit()


class TestComparatorSchemes:
    def test_rk4_with_compare_free_emits_both(self, tmp_path):
        report = run_experiment(preset("positivity_demo"), tmp_path)
        assert (tmp_path / "steps_1.csv").exists()
        assert (tmp_path / "steps_free_1.csv").exists()
        _, rows = read_csv(tmp_path / "summary.csv")
        assert [r[0] for r in rows] == ["RK4", "FREE"]
        rk4_min = float(rows[0][6])
        free_min = float(rows[1][6])
        assert rk4_min < -1e-6
        assert free_min >= -1e-10
        assert {r.scheme for r in report.records} == {"RK4", "FREE"}

    def test_oracle_scheme_is_exact_against_itself(self, tmp_path):
        # one step of the iterated propagator is the reference computation
        cfg = config_with(scheme="ORACLE", plan={"horizon": 1.0, "steps": 1})
        report = run_experiment(cfg, tmp_path)
        _, rows = read_csv(tmp_path / "summary.csv")
        assert float(rows[0][2]) == 0.0
        assert rows[0][4] == ""  # zero error has no log cell
        assert report.slopes == []

    def test_oracle_scheme_time_dependent_path(self, tmp_path):
        cfg = config_with(
            scheme="ORACLE",
            model={"kind": "qudit_chain", "levels": 2, "sites": 2,
                   "linear_z": 1.0, "schedule": "sine", "gamma": 0.5},
            plan={"horizon": 0.5, "steps": 2},
            output={"populations": [1, 4]},
            oracle={"enabled": True, "substeps": 64},
        )
        run_experiment(cfg, tmp_path)
        _, rows = read_csv(tmp_path / "summary.csv")
        # same construction up to substep rounding
        assert float(rows[0][2]) <= 1e-8


class TestGates:
    def make_rows(self, trace_dev=0.0, min_eig=0.0):
        return [
            StepDiagnostics(step=0, time=0.0, trace_deviation=0.0, min_eig=0.0),
            StepDiagnostics(step=1, time=0.1, trace_deviation=trace_dev, min_eig=min_eig),
        ]

    def test_free_trace_gate(self):
        harness._check_gates("FREE", self.make_rows(trace_dev=5e-13), 0.1)
        with pytest.raises(GateError, match="trace"):
            harness._check_gates("FREE", self.make_rows(trace_dev=2e-12), 0.1)

    def test_lree_norm_gate_is_tighter(self):
        rows = self.make_rows(trace_dev=5e-13)
        harness._check_gates("FREE", rows, 0.1)
        with pytest.raises(GateError, match="trace"):
            harness._check_gates("LREE", rows, 0.1)

    def test_positivity_gate(self):
        with pytest.raises(GateError, match="eigenvalue"):
            harness._check_gates("FREE", self.make_rows(min_eig=-1e-9), 0.1)
        harness._check_gates("FREE", self.make_rows(min_eig=-5e-11), 0.1)

    def test_comparator_schemes_are_exempt(self):
        harness._check_gates("RK4", self.make_rows(min_eig=-1.0), 0.1)
        harness._check_gates("ORACLE", self.make_rows(trace_dev=1.0), 0.1)
        harness._check_gates("STD", self.make_rows(trace_dev=1e-3), 0.1)


class TestFailureCleanup:
    def test_partial_files_removed(self, tmp_path, monkeypatch):
        calls = {"n": 0}
        real = harness.integrate

        def explode(*args, **kwargs):
            calls["n"] += 1
            if calls["n"] == 2:
                raise RuntimeError("synthetic failure")
            return real(*args, **kwargs)

        monkeypatch.setattr(harness, "integrate", explode)
        with pytest.raises(RuntimeError, match="synthetic"):
            run_experiment(config_with(), tmp_path)
        assert list(tmp_path.iterdir()) == []


class TestProbeRuns:
    def test_probe_artifacts(self, tmp_path):
        cfg = parse_config_data({
            "model": {"kind": "qudit_chain", "levels": 2, "sites": 1, "gamma": 0.5},
            "probe": {"taus": [0.01, 0.1], "tols": [1e-4, 1e-8]},
        })
        run_experiment(cfg, tmp_path)
        names = sorted(p.name for p in tmp_path.iterdir())
        assert names == ["ce_probe.csv", "config.json", "run.json"]
        header, rows = read_csv(tmp_path / "ce_probe.csv")
        assert header == ["tau", "tol", "ce"]
        assert len(rows) == 4
        for row in rows:
            assert np.isfinite(float(row[2])) and float(row[2]) > 0
        assert json.loads((tmp_path / "run.json").read_text())["probe"]["rows"] == 4

    def test_probe_determinism(self, tmp_path):
        cfg = parse_config_data({
            "model": {"kind": "qudit_chain", "levels": 2, "sites": 1, "gamma": 0.5},
            "probe": {"taus": [0.1], "tols": [1e-6]},
        })
        run_experiment(cfg, tmp_path / "a")
        run_experiment(cfg, tmp_path / "b")
        assert (tmp_path / "a/ce_probe.csv").read_bytes() == (tmp_path / "b/ce_probe.csv").read_bytes()


class TestCli:
    def test_list_presets(self, capsys):
        assert main(["list-presets"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "fig6_1" in out and "positivity_demo" in out

    def test_dump_config_is_parseable(self, capsys):
        assert main(["preset", "fig6_1", "--dump-config"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["scheme"] == "FREE"

    def test_run_config_file(self, tmp_path, capsys):
        cfg_path = tmp_path / "exp.json"
        cfg_path.write_text(json.dumps(BASE))
        out_dir = tmp_path / "out"
        assert main(["run", str(cfg_path), "--out", str(out_dir)]) == EXIT_OK
        assert (out_dir / "summary.csv").exists()
        assert "fitted slope" in capsys.readouterr().out

    def test_preset_respects_output_root_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("LINDBLADINT_OUTPUT_ROOT", str(tmp_path))
        assert main(["preset", "positivity_demo"]) == EXIT_OK
        assert (tmp_path / "positivity_demo" / "summary.csv").exists()

    def test_bad_config_exits_2(self, tmp_path, capsys):
        cfg_path = tmp_path / "bad.json"
        cfg_path.write_text('{"scheme": "FREE"}')
        assert main(["run", str(cfg_path)]) == EXIT_CONFIG
        assert "model" in capsys.readouterr().err

    def test_missing_config_file_exits_2(self, tmp_path):
        assert main(["run", str(tmp_path / "nope.json")]) == EXIT_CONFIG

    def test_unknown_preset_exits_2(self):
        assert main(["preset", "fig9_9"]) == EXIT_CONFIG

    def test_gate_failure_exits_3(self, tmp_path, monkeypatch, capsys):
        def fail(config, out_dir):
            raise GateError("synthetic gate breach")

        monkeypatch.setattr(harness, "run_experiment", fail)
        cfg_path = tmp_path / "exp.json"
        cfg_path.write_text(json.dumps(BASE))
        assert main(["run", str(cfg_path)]) == EXIT_GATE
        assert "gate" in capsys.readouterr().err
