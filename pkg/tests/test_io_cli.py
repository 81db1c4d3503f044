"""Tests for output formats, run configuration and the command line."""

import json

import pandas as pd
import pytest
from pydantic import ValidationError

from infinitary import cli
from infinitary.claims import Check, ClaimReport
from infinitary.config import LogLevel, RunConfig
from infinitary.errors import ReturnParityError
from infinitary.io import OutputFormat, atomic_write, render, write_rows, write_trajectories
from infinitary.processes import ROOT, build_machine
from infinitary.sampling import sample_trajectory


@pytest.fixture
def frame():
    return pd.DataFrame({"a": [1, 2], "b": [0.5, 1.0 / 3.0]})


class TestFormats:
    """Tests for rendering and atomic writes."""

    def test_from_extension(self):
        assert OutputFormat.from_extension("out.jsonl") is OutputFormat.JSONL
        assert OutputFormat.from_extension("out.ndjson") is OutputFormat.JSONL
        assert OutputFormat.from_extension("OUT.CSV") is OutputFormat.CSV
        assert OutputFormat.from_extension("noext") is OutputFormat.CSV

    def test_csv(self, frame):
        assert render(frame) == "a,b\n1,0.5\n2,0.333333333333\n"

    def test_jsonl(self, frame):
        lines = render(frame, OutputFormat.JSONL).splitlines()
        assert [json.loads(line) for line in lines] == [
            {"a": 1, "b": 0.5},
            {"a": 2, "b": 0.333333333333},
        ]

    def test_jsonl_non_finite(self):
        text = render(pd.DataFrame({"x": [float("nan")]}), OutputFormat.JSONL)
        assert json.loads(text) == {"x": None}

    def test_atomic_write(self, tmp_path):
        target = tmp_path / "nested" / "rows.csv"
        atomic_write("first\n", target)
        atomic_write("second\n", target)
        assert target.read_text(encoding="utf-8") == "second\n"
        # no temporary files are left beside the target
        assert [p.name for p in target.parent.iterdir()] == ["rows.csv"]

    def test_stdout(self, frame, capsys):
        write_rows(frame)
        assert capsys.readouterr().out.startswith("a,b\n")

    def test_trajectories(self, even, tmp_path):
        target = tmp_path / "paths.txt"
        trajectories = [sample_trajectory(even, seed, 20) for seed in (1, 2)]
        write_trajectories(trajectories, target)
        lines = target.read_text().splitlines()
        assert lines == [t.word for t in trajectories]


class TestRunConfig:
    """Tests for RunConfig validation and precedence."""

    def test_defaults(self):
        config = RunConfig(machine="even")
        assert config.p == 0.5
        assert config.q0 == 1e-4
        assert config.format is OutputFormat.CSV
        assert config.log_level is LogLevel.WARNING
        assert config.out is None

    @pytest.mark.parametrize("field, value", [
        ("p", 0.0), ("p", 1.5), ("q0", 0.5), ("mass_tol", 1.0), ("t_max", 0), ("jobs", 0),
    ])
    def test_invalid(self, field, value):
        with pytest.raises(ValidationError):
            RunConfig(machine="even", **{field: value})

    def test_unknown_machine(self):
        with pytest.raises(ValidationError):
            RunConfig(machine="golden-mean")

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("EM_MACHINE", "bc")
        monkeypatch.setenv("EM_T_MAX", "7")
        config = RunConfig()
        assert config.machine == "bc"
        assert config.t_max == 7

    def test_explicit_wins(self, monkeypatch):
        monkeypatch.setenv("EM_T_MAX", "7")
        assert RunConfig(machine="even", t_max=3).t_max == 3


class TestCommandLine:
    """Tests for main and its exit codes."""

    def test_curves(self, tmp_path):
        target = tmp_path / "even.csv"
        code = cli.main(["curves", "--machine", "even", "--t-max", "3", "--out", str(target)])
        assert code == cli.EXIT_OK
        frame = pd.read_csv(target)
        assert list(frame["t"]) == [1, 2, 3]

    def test_curves_jsonl(self, tmp_path):
        target = tmp_path / "even.jsonl"
        code = cli.main(["curves", "--machine", "even", "--t-max", "2", "--format", "jsonl",
                         "--out", str(target)])
        assert code == cli.EXIT_OK
        rows = [json.loads(line) for line in target.read_text().splitlines()]
        assert [row["t"] for row in rows] == [1, 2]

    def test_environment_fills_flags(self, monkeypatch, tmp_path):
        monkeypatch.setenv("EM_MACHINE", "even")
        target = tmp_path / "env.csv"
        assert cli.main(["curves", "--t-max", "2", "--out", str(target)]) == cli.EXIT_OK
        assert target.exists()

    @pytest.mark.parametrize("argv", [
        ["bogus"],
        ["curves"],
        ["curves", "--machine", "golden-mean"],
        ["curves", "--machine", "even", "--p", "1.5"],
        ["curves", "--machine", "even", "--t-max", "many"],
    ])
    def test_configuration_errors(self, argv):
        assert cli.main(argv) == cli.EXIT_CONFIG

    def test_budget(self, tmp_path):
        argv = ["curves", "--machine", "even", "--t-max", "8", "--max-words", "1",
                "--out", str(tmp_path / "x.csv")]
        assert cli.main(argv) == cli.EXIT_BUDGET

    def test_verify_failure(self, monkeypatch, tmp_path):
        report = ClaimReport("demo")
        report.add(Check.holds("demo", 1, False))
        monkeypatch.setattr(cli, "run_suite", lambda config: [report])
        target = tmp_path / "report.csv"
        assert cli.main(["verify", "--machine", "even", "--out", str(target)]) == cli.EXIT_FAILED
        frame = pd.read_csv(target)
        assert list(frame.columns) == cli.REPORT_COLUMNS
        assert not frame["passed"].any()

    def test_sample(self, tmp_path, capsys):
        target = tmp_path / "even.txt"
        argv = ["sample", "--machine", "even", "--length", "2000", "--seed", "3",
                "--out", str(target)]
        assert cli.main(argv) == cli.EXIT_OK
        text = target.read_text()
        assert len(text) == 2001
        assert text.endswith("\n")
        assert set(text.strip()) <= {"0", "1"}
        summary = capsys.readouterr().out
        assert summary.startswith("quantity,estimate,stderr")
        assert "H[X^1]" in summary
        assert "chi2[X^2]" in summary
        assert "E[return time" in summary

    def test_sample_parity_failure(self, monkeypatch, tmp_path):
        def broken(config, symbols):
            raise ReturnParityError(ROOT, 1, 10)

        monkeypatch.setattr(cli, "sample_summary", broken)
        argv = ["sample", "--machine", "even", "--length", "50", "--out", str(tmp_path / "w.txt")]
        assert cli.main(argv) == cli.EXIT_FAILED

    @pytest.mark.slow
    def test_bc_sample_summary(self):
        config = RunConfig(machine="bc", length=20_000, seed=5)
        trajectory = sample_trajectory(build_machine("bc"), config.seed, config.length)
        summary = cli.sample_summary(config, trajectory.symbols)
        returns = summary[summary["quantity"].str.startswith("E[return time")].iloc[0]
        # enough draws to see excursions below the root
        assert returns["stderr"] > 0.0
        assert returns["long_returns"] > 0
        assert returns["odd_returns"] == 0.0
        assert summary["quantity"].str.startswith("chi2").sum() == 3
