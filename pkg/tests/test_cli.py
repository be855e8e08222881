"""CLI: flags, config merge, formats, exit codes."""

import json

import pytest

from delaylogistic.cli import main
from delaylogistic.serialize import read_orbit_csv, read_sweep_csv


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr().out
    return rc, out


class TestOrbitCommand:
    def test_csv_to_stdout(self, capsys):
        rc, out = run(capsys, "orbit", "--alpha", "0.5", "--beta", "0.5",
                      "--z0", "0.1", "--z-1", "0.1", "--iters", "5")
        assert rc == 0
        lines = out.splitlines()
        assert lines[0] == "n,re,im"
        assert len(lines) == 8  # header + z[-1], z[0], 5 iterates
        assert lines[1].startswith("-1,")

    def test_csv_to_file(self, tmp_path, capsys):
        path = tmp_path / "orbit.csv"
        rc, _ = run(capsys, "orbit", "--alpha", "i", "--beta", "2+3i",
                    "--z0", "(0.1, 0.2)", "--z-1", "0.05", "--iters", "10",
                    "--out", str(path))
        assert rc == 0
        rows = read_orbit_csv(path.open())
        assert len(rows) == 12

    def test_json_format(self, capsys):
        rc, out = run(capsys, "orbit", "--alpha", "0.5", "--beta", "0.5",
                      "--z0", "0.1", "--z-1", "0.1", "--iters", "3",
                      "--format", "json")
        assert rc == 0
        data = json.loads(out)
        assert data["alpha"] == [0.5, 0.0]
        assert data["status"] == "Completed"
        assert len(data["points"]) == 5

    def test_plot_written(self, tmp_path, capsys):
        png = tmp_path / "orbit.png"
        rc, _ = run(capsys, "orbit", "--alpha", "i", "--beta", "2+3i",
                    "--z0", "0.1", "--z-1", "0.1", "--iters", "20",
                    "--out", str(tmp_path / "o.csv"), "--plot", str(png))
        assert rc == 0 and png.exists()


class TestReports:
    def test_stability_json(self, capsys):
        rc, out = run(capsys, "stability", "--alpha", "0.5", "--beta", "1")
        assert rc == 0
        reports = json.loads(out)
        assert reports[0]["classification"] == "LocallyAsymptoticallyStable"
        assert reports[1]["paper_criterion_verdict"] is not None

    def test_equilibria_json(self, capsys):
        rc, out = run(capsys, "equilibria", "--alpha", "4", "--beta", "1")
        data = json.loads(out)
        assert rc == 0
        assert data["equilibria"][1] == [3.0, 0.0]
        assert data["trap_ball_radius"] is None

    def test_period2_json(self, capsys):
        rc, out = run(capsys, "period2", "--alpha", "1+i", "--beta", "2+3i")
        data = json.loads(out)
        assert rc == 0
        assert data["paper_verdict"] == "unstable"
        assert abs(data["abs_chi"] - 1.5) < 1e-6

    def test_period2_none_exists(self, capsys):
        rc, out = run(capsys, "period2", "--alpha", "-1", "--beta", "1")
        assert rc == 0
        assert json.loads(out)["cycles"] is None

    def test_detect_cycle_json(self, capsys):
        # leading-minus complex values use the --flag=value form
        rc, out = run(capsys, "detect-cycle", "--alpha", "i", "--beta", "2+3i",
                      "--z0=-0.288941+0.157085i", "--z-1", "0.316268+0.129975i",
                      "--iters", "30", "--transient", "0", "--p-max", "10",
                      "--match-tol", "1e-4", "--window", "8")
        data = json.loads(out)
        assert rc == 0
        assert data["detected"] and data["period"] == 3

    def test_lyapunov_json_and_csv(self, capsys):
        args = ("lyapunov", "--alpha", "0.5", "--beta", "0.5",
                "--z0", "0.1", "--z-1", "0.1", "--iters", "2000", "--transient", "100")
        rc, out = run(capsys, *args)
        data = json.loads(out)
        assert rc == 0
        assert data["verdict"] == "NonChaotic"
        rc, out = run(capsys, *args, "--format", "csv")
        assert rc == 0
        assert out.splitlines()[0] == "k,estimate"

    def test_classify_json(self, capsys):
        rc, out = run(capsys, "classify", "--alpha", "0.5", "--beta", "0.5",
                      "--seeds", "3", "--seed", "1", "--transient", "1000",
                      "--p-max", "64", "--lyap-steps", "5000")
        data = json.loads(out)
        assert rc == 0
        assert data["verdict"] == "ConvergentToEquilibrium"
        assert len(data["seed_outcomes"]) == 3


class TestSweepCommand:
    def test_sweep_csv_and_plot(self, tmp_path, capsys):
        out_csv = tmp_path / "sweep.csv"
        png = tmp_path / "sweep.png"
        rc, _ = run(capsys, "sweep", "--target", "alpha", "--fixed", "0.5",
                    "--re-min", "0.4", "--re-max", "0.6", "--re-steps", "1",
                    "--im-min", "-0.1", "--im-max", "0.1", "--im-steps", "1",
                    "--seeds", "2", "--seed", "0", "--transient", "1000",
                    "--p-max", "32", "--lyap-steps", "2000",
                    "--out", str(out_csv), "--plot", str(png))
        assert rc == 0
        rows = read_sweep_csv(out_csv.open())
        assert len(rows) == 1
        assert rows[0]["classification"] == "ConvergentToEquilibrium"
        assert png.exists()


class TestConfigAndErrors:
    def test_config_supplies_flags_cli_overrides(self, tmp_path, capsys):
        config = tmp_path / "conf.json"
        config.write_text(json.dumps({"alpha": "4", "beta": "1"}))
        rc, out = run(capsys, "equilibria", "--config", str(config))
        assert rc == 0
        assert json.loads(out)["equilibria"][1] == [3.0, 0.0]
        # CLI --alpha overrides the config value
        rc, out = run(capsys, "equilibria", "--config", str(config), "--alpha", "1")
        assert json.loads(out)["equilibria"][1] == [0.0, 0.0]

    def test_missing_required_is_exit_2(self, capsys):
        rc, _ = run(capsys, "equilibria", "--alpha", "1")
        assert rc == 2

    def test_bad_complex_is_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["equilibria", "--alpha", "zzz", "--beta", "1"])
        assert exc.value.code == 2

    def test_bad_config_is_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("not json")
        rc, _ = run(capsys, "equilibria", "--alpha", "1", "--beta", "1",
                    "--config", str(bad))
        assert rc == 2

    def test_degenerate_input_is_exit_2(self, capsys):
        rc, _ = run(capsys, "period2", "--alpha", "i", "--beta", "0")
        assert rc == 2


class TestReproduceCommand:
    def test_fig2_exit_0(self, tmp_path, capsys):
        rc, out = run(capsys, "reproduce", "fig2", "--out-dir", str(tmp_path), "--no-plot")
        assert rc == 0
        assert "[PASS] fig2/paper_verdict" in out

    def test_fig1_exit_1_on_published_mismatch(self, tmp_path, capsys):
        rc, out = run(capsys, "reproduce", "fig1", "--out-dir", str(tmp_path), "--no-plot")
        assert rc == 1
        assert "[FAIL] fig1/abs_chi" in out
