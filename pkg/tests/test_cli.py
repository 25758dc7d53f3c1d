"""End-to-end CLI behavior: artifacts, determinism, and exit codes."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from arraylink import __version__, channel_preset, path_loss_db
from arraylink.cli import main


def write_config(tmp_path, name, data) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(data, indent=2) + "\n")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


SWEEP_CONFIG = {
    "channel": {"preset": "inh-office-los"},
    "link": {"preset": "ue-poc"},
    "sweep": {"d_min": 1, "d_max": 30, "step": 1, "n_streams": 4},
}

SCENARIO_CONFIG = {
    "uav": {"h": 35, "d0": 22},
    "users": [[22, 3], [22, -3]],
    "interference": True,
}


class TestPatternCommand:
    def test_artifacts_and_headline(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "p.json", {"steering": {"azimuth_deg": 45}})
        out = tmp_path / "out" / "pattern45"
        code, stdout, _ = run_cli(
            capsys, "pattern", "--config", cfg, "--out", str(out)
        )
        assert code == 0
        assert "peak directivity" in stdout
        assert (tmp_path / "out" / "pattern45.csv").exists()
        summary = json.loads((tmp_path / "out" / "pattern45.json").read_text())
        assert summary["command"] == "pattern"
        assert summary["version"] == __version__
        assert summary["results"]["hpbw_azimuth_deg"] > 0.0
        assert summary["config"]["steering"]["azimuth_deg"] == 45

    def test_headline_only_without_out(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "p.json", {})
        code, stdout, _ = run_cli(capsys, "pattern", "--config", cfg)
        assert code == 0
        assert "wrote" not in stdout

    def test_constant_pattern_reports_no_beamwidth(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            "p.json",
            {"array": {"rows": 1, "cols": 1, "element_model": "isotropic"}},
        )
        out = tmp_path / "iso"
        code, _, _ = run_cli(
            capsys, "pattern", "--config", cfg, "--out", str(out),
            "--resolution", "5",
        )
        assert code == 0
        summary = json.loads((tmp_path / "iso.json").read_text())
        assert summary["results"]["hpbw_azimuth_deg"] is None


class TestEccCommand:
    def test_displaced_self_correlation(self, tmp_path, capsys):
        pattern_cfg = write_config(tmp_path, "p.json", {})
        base = tmp_path / "bore"
        assert run_cli(
            capsys, "pattern", "--config", pattern_cfg, "--out", str(base)
        )[0] == 0
        ecc_cfg = write_config(
            tmp_path,
            "e.json",
            {
                "pattern_a": str(tmp_path / "bore.csv"),
                "pattern_b": str(tmp_path / "bore.csv"),
                "displacement_b": [4.0, 0.0, 0.0],
            },
        )
        code, stdout, _ = run_cli(
            capsys, "ecc", "--config", ecc_cfg, "--out", str(tmp_path / "rho")
        )
        assert code == 0
        summary = json.loads((tmp_path / "rho.json").read_text())
        assert summary["results"]["ecc"] == pytest.approx(0.0422873172, abs=1e-9)
        assert float(stdout.strip().splitlines()[-1]) == pytest.approx(
            summary["results"]["ecc"], abs=1e-9
        )
        assert not (tmp_path / "rho.csv").exists()

    def test_missing_pattern_file_is_config_error(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            "e.json",
            {"pattern_a": str(tmp_path / "a.csv"), "pattern_b": str(tmp_path / "b.csv")},
        )
        code, _, stderr = run_cli(capsys, "ecc", "--config", cfg)
        assert code == 2
        record = json.loads(stderr)
        assert record["exit_code"] == 2
        assert "not found" in record["message"]

    def test_zero_power_pattern_is_numerical_error(self, tmp_path, capsys):
        dead = tmp_path / "dead.csv"
        lines = ["theta_deg,phi_deg,re_etheta,im_etheta,re_ephi,im_ephi"]
        for theta in (45.0, 135.0):
            for phi in (0.0, 90.0, 180.0, 270.0):
                lines.append(f"{theta},{phi},0,0,0,0")
        dead.write_text("\n".join(lines) + "\n")
        cfg = write_config(
            tmp_path, "e.json", {"pattern_a": str(dead), "pattern_b": str(dead)}
        )
        code, _, stderr = run_cli(capsys, "ecc", "--config", cfg)
        assert code == 3
        assert json.loads(stderr)["error"] == "DegeneratePatternError"


class TestPathlossCommand:
    def test_headline_value(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            "pl.json",
            {"channel": {"preset": "inh-office-los"}, "distance_m": 10},
        )
        code, stdout, _ = run_cli(capsys, "pathloss", "--config", cfg)
        assert code == 0
        expect = path_loss_db(channel_preset("inh-office-los"), 10.0)
        assert float(stdout.strip()) == pytest.approx(expect, abs=1e-9)


class TestSweepCommand:
    def test_csv_columns_and_rows(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "s.json", SWEEP_CONFIG)
        out = tmp_path / "sweep"
        code, _, _ = run_cli(capsys, "sweep", "--config", cfg, "--out", str(out))
        assert code == 0
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert lines[0] == "d_m,pl_db,snr_db,stream_rate_gbps,aggregate_gbps"
        assert len(lines) == 31
        first = lines[1].split(",")
        assert float(first[0]) == 1.0

    def test_summary_results(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "s.json", SWEEP_CONFIG)
        out = tmp_path / "sweep"
        run_cli(capsys, "sweep", "--config", cfg, "--out", str(out))
        summary = json.loads((tmp_path / "sweep.json").read_text())
        assert summary["results"]["n_points"] == 30
        assert summary["results"]["peak_aggregate_gbps"] == pytest.approx(
            4.23, abs=1e-9
        )

    def test_stochastic_rerun_byte_identical(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "s.json", SWEEP_CONFIG)
        outs = []
        for name in ("a", "b"):
            out = tmp_path / name / "run"
            code, _, _ = run_cli(
                capsys,
                "sweep",
                "--config",
                cfg,
                "--out",
                str(out),
                "--fading",
                "stochastic",
                "--seed",
                "7",
            )
            assert code == 0
            outs.append(out)
        for suffix in (".csv", ".json"):
            a = (outs[0].parent / f"run{suffix}").read_bytes()
            b = (outs[1].parent / f"run{suffix}").read_bytes()
            assert a == b

    def test_different_seed_changes_output(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "s.json", SWEEP_CONFIG)
        texts = []
        for seed in ("7", "8"):
            out = tmp_path / f"seed{seed}" / "run"
            run_cli(
                capsys, "sweep", "--config", cfg, "--out", str(out),
                "--fading", "stochastic", "--seed", seed,
            )
            texts.append((out.parent / "run.csv").read_text())
        assert texts[0] != texts[1]

    def test_summary_config_replays_identically(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "s.json", SWEEP_CONFIG)
        first = tmp_path / "first"
        run_cli(capsys, "sweep", "--config", cfg, "--out", str(first))
        summary = json.loads((tmp_path / "first.json").read_text())
        echoed = write_config(tmp_path, "echo.json", summary["config"])
        second = tmp_path / "second"
        run_cli(capsys, "sweep", "--config", echoed, "--out", str(second))
        assert (tmp_path / "first.csv").read_bytes() == (
            tmp_path / "second.csv"
        ).read_bytes()
        resummary = json.loads((tmp_path / "second.json").read_text())
        assert resummary["config"] == summary["config"]
        assert resummary["results"] == summary["results"]


class TestScenarioCommand:
    def test_two_user_aggregate(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "m.json", SCENARIO_CONFIG)
        out = tmp_path / "mu"
        code, stdout, _ = run_cli(
            capsys, "scenario", "--config", cfg, "--out", str(out)
        )
        assert code == 0
        assert "aggregate" in stdout and "2 streams" in stdout
        summary = json.loads((tmp_path / "mu.json").read_text())
        assert summary["results"]["aggregate_gbps"] == pytest.approx(
            2.168, abs=1e-9
        )
        assert summary["results"]["beta_deg"] is not None
        assert summary["results"]["any_steering_clamped"] is False
        lines = (tmp_path / "mu.csv").read_text().splitlines()
        assert lines[0].startswith("stream,user_x_m,user_y_m,slant_m,steer_az_deg")
        assert len(lines) == 3

    def test_stochastic_scenario_rerun_byte_identical(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "m.json", SCENARIO_CONFIG)
        blobs = []
        for name in ("x", "y"):
            out = tmp_path / name
            code, _, _ = run_cli(
                capsys, "scenario", "--config", cfg, "--out", str(out),
                "--fading", "stochastic", "--seed", "3",
            )
            assert code == 0
            blobs.append(
                (tmp_path / f"{name}.csv").read_bytes()
                + (tmp_path / f"{name}.json").read_bytes()
            )
        assert blobs[0] == blobs[1]


class TestFailureModes:
    def test_missing_config_file(self, tmp_path, capsys):
        code, _, stderr = run_cli(
            capsys, "pathloss", "--config", str(tmp_path / "ghost.json")
        )
        assert code == 2
        record = json.loads(stderr)
        assert record["error"] == "InvalidConfigError"
        assert record["exit_code"] == 2

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"users": [[22, 3],]}')
        code, _, stderr = run_cli(capsys, "scenario", "--config", str(path))
        assert code == 2
        assert json.loads(stderr)["fields"]

    def test_schema_violation_reports_paths(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "bad.json", {"users": "everyone"})
        code, _, stderr = run_cli(capsys, "scenario", "--config", cfg)
        assert code == 2
        record = json.loads(stderr)
        assert any(f["path"] == "$.users" for f in record["fields"])

    def test_out_of_model_distance(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            "pl.json",
            {"channel": {"preset": "inh-office-los"}, "distance_m": 0.5},
        )
        code, _, stderr = run_cli(capsys, "pathloss", "--config", cfg)
        assert code == 2
        assert json.loads(stderr)["error"] == "OutOfModelRangeError"

    def test_no_partial_files_on_failure(self, tmp_path, capsys):
        cfg = write_config(
            tmp_path,
            "s.json",
            {
                "channel": {"preset": "inh-office-los"},
                "link": {"preset": "ue-poc"},
                "sweep": {"d_min": 0.5, "d_max": 30, "step": 1},
            },
        )
        out = tmp_path / "dir" / "run"
        code, _, _ = run_cli(capsys, "sweep", "--config", cfg, "--out", str(out))
        assert code == 2
        assert not (tmp_path / "dir").exists()

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert __version__ in capsys.readouterr().out


def test_module_entry_point(tmp_path):
    cfg = tmp_path / "pl.json"
    cfg.write_text(
        json.dumps(
            {"channel": {"preset": "umi-street-canyon-los"}, "distance_m": 10}
        )
    )
    proc = subprocess.run(
        [sys.executable, "-m", "arraylink", "pathloss", "--config", str(cfg)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert float(proc.stdout.strip()) == pytest.approx(88.9630250077, abs=1e-9)
