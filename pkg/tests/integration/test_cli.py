"""Integration tests for the seqmc command line.

Runs the subcommands in-process through ``seqmc.cli.main`` and checks exit
codes, stdout and the files written.
"""

import csv
import json

import pytest

from seqmc.cli import EXIT_CONFIG, EXIT_FAILURE, EXIT_OK, main


FIG1_CONFIG = """\
kind: fig1
alpha: 0.1
procedure: bh
m_values: [4, 6]
m: 4
leave_undecided: 1
repetitions: 40
master_seed: 7
"""

DIVERGE_CONFIG = """\
kind: runtime-divergence
m: 3
epsilon: 0.01
caps: [100, 1000]
repetitions: 6
master_seed: 11
prior:
  kind: uniform
"""


def _read_csv(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    comments = [line for line in lines if line.startswith("#")]
    rows = list(csv.DictReader(line for line in lines if not line.startswith("#")))
    return comments, rows


class TestWaldCommand:
    """The wald subcommand."""

    @pytest.mark.integration
    def test_prints_bound(self, capsys):
        assert main(["wald", "--p1", "0.2", "--alpha", "0.1", "--epsilon", "0.1"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("39.59")

    @pytest.mark.integration
    def test_infinite(self, capsys):
        assert main(["wald", "--p1", "0.1", "--alpha", "0.1", "--epsilon", "0.05"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "inf"

    @pytest.mark.integration
    def test_out_of_range_is_config_error(self, capsys):
        """p1 = 0 is outside (0, 1) and maps to exit code 2."""
        assert main(["wald", "--p1", "0", "--alpha", "0.1", "--epsilon", "0.1"]) == EXIT_CONFIG
        assert "configuration error" in capsys.readouterr().err

    @pytest.mark.integration
    def test_unknown_log_level(self, capsys):
        code = main(["wald", "--p1", "0.2", "--alpha", "0.1", "--epsilon", "0.1", "--log-level", "LOUD"])
        assert code == EXIT_CONFIG
        assert "log_level" in capsys.readouterr().err


class TestFig1Command:
    """The fig1 subcommand."""

    @pytest.mark.integration
    def test_writes_survival_csv(self, config_file, temp_dir, capsys):
        out = temp_dir / "out" / "fig1.csv"
        assert main(["fig1", "--config", str(config_file(FIG1_CONFIG)), "--out", str(out)]) == EXIT_OK
        assert f"wrote {out}" in capsys.readouterr().out

        comments, rows = _read_csv(out)
        assert comments[0].startswith("# config_hash=")
        assert "master_seed=7" in comments[0]
        assert any("median_undecided m=4" in c for c in comments)
        for m in (4, 6):
            values = [float(r["survival"]) for r in rows if int(r["m"]) == m]
            assert len(values) == m + 1
            assert values[-1] == 0.0
            assert all(a >= b for a, b in zip(values, values[1:]))

    @pytest.mark.integration
    def test_stdout_when_no_out(self, config_file, capsys):
        assert main(["fig1", "--config", str(config_file(FIG1_CONFIG))]) == EXIT_OK
        captured = capsys.readouterr()
        assert "m,t,survival" in captured.out.splitlines()
        assert "median undecided" in captured.err

    @pytest.mark.integration
    def test_seed_flag_overrides_file(self, config_file, capsys):
        main(["fig1", "--config", str(config_file(FIG1_CONFIG)), "--seed", "99"])
        assert "master_seed=99" in capsys.readouterr().out

    @pytest.mark.integration
    def test_invalid_config(self, config_file, capsys):
        """Every offending field is listed and the exit code is 2."""
        path = config_file("m: 0\nalpha: 3\n")
        assert main(["fig1", "--config", str(path)]) == EXIT_CONFIG
        err = capsys.readouterr().err
        assert "  m:" in err
        assert "  alpha:" in err

    @pytest.mark.integration
    def test_missing_config(self, temp_dir, capsys):
        assert main(["fig1", "--config", str(temp_dir / "nope.yaml")]) == EXIT_CONFIG
        assert "cannot read" in capsys.readouterr().err

    @pytest.mark.integration
    def test_environment_seed(self, config_file, monkeypatch, capsys):
        monkeypatch.setenv("SEQMC_SEED", "123")
        main(["fig1", "--config", str(config_file(FIG1_CONFIG))])
        assert "master_seed=123" in capsys.readouterr().out


class TestDivergeCommand:
    """The diverge subcommand."""

    @pytest.mark.integration
    def test_truncated_means_grow_with_cap(self, config_file, temp_dir):
        out = temp_dir / "diverge.csv"
        code = main(
            ["diverge", "--config", str(config_file(DIVERGE_CONFIG)), "--out", str(out), "--scenario", "uniform"]
        )
        assert code == EXIT_OK
        _, rows = _read_csv(out)
        assert {r["scenario"] for r in rows} == {"uniform"}
        for statistic in {r["statistic"] for r in rows}:
            selected = [r for r in rows if r["statistic"] == statistic]
            caps = [int(r["cap"]) for r in selected]
            values = [float(r["value"]) for r in selected]
            assert caps == [100, 1000]
            assert values[0] <= values[1]
            assert all(0.0 <= float(r["truncated_fraction"]) <= 1.0 for r in selected)

    @pytest.mark.integration
    def test_single_scenario_has_wald_rows(self, config_file, temp_dir):
        out = temp_dir / "single.csv"
        main(["diverge", "--config", str(config_file(DIVERGE_CONFIG)), "--out", str(out), "--scenario", "single"])
        _, rows = _read_csv(out)
        wald = [r for r in rows if r["statistic"] == "wald_integrated"]
        assert len(wald) == 2
        assert all(r["truncated_fraction"] == "" for r in wald)

    @pytest.mark.integration
    def test_unknown_scenario(self, config_file, capsys):
        code = main(["diverge", "--config", str(config_file(DIVERGE_CONFIG)), "--scenario", "zipf"])
        assert code == EXIT_CONFIG
        assert "invalid input" in capsys.readouterr().err


class TestAuditCommand:
    """The audit subcommand."""

    @pytest.mark.integration
    def test_passing_audits(self, capsys):
        assert main(["audit", "--only", "wald", "--only", "order-statistics"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "[PASS] wald" in out
        assert "2/2 audits passed" in out

    @pytest.mark.integration
    def test_failing_audit_exits_one(self, config_file, capsys):
        """The Robbins gap at p = 1/2 makes the lemma2 audit fail."""
        path = config_file("kind: bound-audit\nlemma2_p: [0.5]\n")
        assert main(["audit", "--config", str(path), "--only", "lemma2-bound"]) == EXIT_FAILURE
        out = capsys.readouterr().out
        assert "[FAIL] lemma2-bound" in out
        assert "0/1 audits passed" in out

    @pytest.mark.integration
    def test_report(self, temp_dir, capsys):
        report = temp_dir / "report" / "audits.json"
        assert main(["audit", "--only", "wald", "--report", str(report), "--seed", "5"]) == EXIT_OK
        data = json.loads(report.read_text(encoding="utf-8"))
        assert data["master_seed"] == 5
        assert len(data["config_hash"]) == 16
        assert [r["name"] for r in data["results"]] == ["wald"]
        assert data["results"][0]["passed"] is True

    @pytest.mark.integration
    def test_unknown_audit(self, capsys):
        assert main(["audit", "--only", "astrology"]) == EXIT_CONFIG
        assert "unknown audits" in capsys.readouterr().err
