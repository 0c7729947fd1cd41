"""End-to-end command-line behavior: exit codes, summary lines, file outputs."""
import json
import subprocess
import sys

import numpy as np
import pytest
from click.testing import CliRunner

from spinorsurf.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def surface_args(tmp_path, *extra):
    return [
        "soliton-surface",
        "--mu", "1",
        "--nx", "9",
        "--ny", "8",
        "--format", "csv",
        "--out", str(tmp_path / "s.csv"),
        *extra,
    ]


class TestSolitonSurface:
    def test_happy_path(self, runner, tmp_path):
        result = runner.invoke(main, surface_args(tmp_path))
        assert result.exit_code == 0, result.output
        assert "mesh 9 x 8 vertices, 56 quads" in result.output
        assert "dirac_residual" in result.output
        assert "imag_leakage" in result.output
        assert "conformality_defect" in result.output
        assert "wrote" in result.output
        lines = (tmp_path / "s.csv").read_text().splitlines()
        assert len(lines) == 9 * 8 + 1

    def test_reported_residual_is_small(self, runner, tmp_path):
        result = runner.invoke(main, surface_args(tmp_path))
        value = next(
            float(line.split()[1])
            for line in result.output.splitlines()
            if line.startswith("dirac_residual")
        )
        assert value < 1e-10

    def test_missing_mu(self, runner):
        result = runner.invoke(main, ["soliton-surface"])
        assert result.exit_code == 2
        assert "--mu" in result.output

    def test_pole_rejected(self, runner):
        result = runner.invoke(main, ["soliton-surface", "--mu", "1", "--lambda", "0,-0.5"])
        assert result.exit_code == 2
        assert "pole" in result.output.lower()

    def test_malformed_lambda(self, runner):
        result = runner.invoke(main, ["soliton-surface", "--mu", "1", "--lambda", "abc"])
        assert result.exit_code == 2

    def test_outputs_are_deterministic(self, runner, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for out in (a, b):
            result = runner.invoke(
                main,
                ["soliton-surface", "--mu", "1", "--nx", "9", "--ny", "8",
                 "--format", "csv", "--out", str(out)],
            )
            assert result.exit_code == 0
        assert a.read_bytes() == b.read_bytes()


class TestConfigFile:
    def test_config_fills_and_flags_override(self, runner, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({
            "mu": 1.0, "nx": 9, "ny": 8, "format": "csv",
            "out": str(tmp_path / "c.csv"), "lambda": "1,0",
        }))
        result = runner.invoke(
            main, ["soliton-surface", "--config", str(cfg), "--nx", "7"]
        )
        assert result.exit_code == 0, result.output
        assert "mesh 7 x 8 vertices" in result.output
        assert (tmp_path / "c.csv").exists()

    def test_unknown_key_rejected(self, runner, tmp_path):
        cfg = tmp_path / "bad.json"
        cfg.write_text(json.dumps({"mu": 1.0, "bogus": 2}))
        result = runner.invoke(main, ["soliton-surface", "--config", str(cfg)])
        assert result.exit_code == 2
        assert "bogus" in result.output


class TestEvolve:
    def test_snapshot_only(self, runner):
        result = runner.invoke(
            main, ["evolve", "--t-end", "0", "--n", "64", "--domain-length", "20"]
        )
        assert result.exit_code == 0, result.output
        assert "in 1 snapshots" in result.output
        assert "tracking_error 0.000000e+00" in result.output

    def test_exact_soliton_tracking_line(self, runner):
        result = runner.invoke(
            main, ["evolve", "--n", "256", "--dt", "1e-3", "--t-end", "0.01"]
        )
        assert result.exit_code == 0, result.output
        value = next(
            float(line.split()[1])
            for line in result.output.splitlines()
            if line.startswith("tracking_error")
        )
        assert value < 1e-6
        assert "invariant_drift" in result.output

    def test_bargmann_translation_line(self, runner):
        result = runner.invoke(
            main,
            ["evolve", "--init", "bargmann", "--mu", "1", "--n", "256",
             "--dt", "1e-3", "--t-end", "0.01"],
        )
        assert result.exit_code == 0, result.output
        assert "translation_deviation" in result.output

    def test_trajectory_csv(self, runner, tmp_path):
        out = tmp_path / "traj.csv"
        result = runner.invoke(
            main,
            ["evolve", "--n", "64", "--domain-length", "20", "--dt", "1e-3",
             "--t-end", "2e-3", "--record-every", "1", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        lines = out.read_text().splitlines()
        assert lines[0] == "t,x,u"
        assert len(lines) == 1 + 3 * 64  # snapshots at t = 0, dt, 2 dt

    def test_file_init(self, runner, tmp_path):
        src = tmp_path / "u0.csv"
        src.write_text("u\n" + "\n".join(str(0.1 * np.sin(2 * np.pi * j / 64)) for j in range(64)))
        result = runner.invoke(
            main,
            ["evolve", "--init", "file", "--init-file", str(src), "--n", "64",
             "--domain-length", "20", "--dt", "1e-3", "--t-end", "0.01"],
        )
        assert result.exit_code == 0, result.output
        assert "tracking_error" not in result.output
        assert "translation_deviation" not in result.output

    def test_file_init_requires_path(self, runner):
        result = runner.invoke(main, ["evolve", "--init", "file"])
        assert result.exit_code == 2
        assert "--init-file" in result.output

    def test_mesh_out_needs_bargmann(self, runner, tmp_path):
        result = runner.invoke(
            main, ["evolve", "--mesh-out", str(tmp_path / "surf")]
        )
        assert result.exit_code == 2
        assert "--mesh-out" in result.output

    def test_mesh_snapshots(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["evolve", "--init", "bargmann", "--mu", "1", "--n", "64",
             "--domain-length", "20", "--dt", "1e-3", "--t-end", "2e-3",
             "--record-every", "1", "--mesh-out", str(tmp_path / "surf")],
        )
        assert result.exit_code == 0, result.output
        assert "wrote 3 surface snapshots" in result.output
        for idx in range(3):
            mesh_file = tmp_path / f"surf_{idx:03d}.obj"
            assert mesh_file.exists()
            assert mesh_file.read_text().startswith("v ")

    def test_invalid_grid_size(self, runner):
        result = runner.invoke(main, ["evolve", "--n", "100", "--t-end", "0"])
        assert result.exit_code == 2
        assert "power of two" in result.output


class TestVerify:
    def test_single_suite(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "zs"])
        assert result.exit_code == 0, result.output
        assert "zs.jost_residual" in result.output
        assert "FAIL" not in result.output
        assert all(
            line.endswith("PASS") for line in result.output.splitlines() if line
        )

    def test_unknown_suite(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "bogus"])
        assert result.exit_code == 2

    def test_report_file_matches_stdout(self, runner, tmp_path):
        out = tmp_path / "report.txt"
        result = runner.invoke(main, ["verify", "--suite", "clifford", "--out", str(out)])
        assert result.exit_code == 0
        assert out.read_text() == result.output

    def test_out_dir_env_var(self, runner, tmp_path):
        result = runner.invoke(
            main,
            ["verify", "--suite", "clifford", "--out", "report.txt"],
            env={"SPINORSURF_OUT_DIR": str(tmp_path)},
        )
        assert result.exit_code == 0
        assert (tmp_path / "report.txt").exists()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "spinorsurf.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "soliton-surface" in proc.stdout
