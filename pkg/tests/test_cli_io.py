"""
Tests for the command-line front end and result persistence.
"""
import json
import math
from fractions import Fraction

import pytest
from typer.testing import CliRunner

from src.cli_io import (
    PersistenceError,
    RUN_FIELDS,
    app,
    read_runs,
    render_extended,
    resolve_p,
    write_phases,
    write_runs,
)
from src.level_chain import INFINITE
from src.models import PhaseTrace, RunRecord

runner = CliRunner()


def _records():
    return [
        RunRecord(algo="mahh-onebit", n=8, m=2, p=0.25, seed=123, trial=0, T=40, T1=3, N=2),
        RunRecord(algo="mahh-onebit", n=8, m=2, p=0.25, seed=456, trial=1, T=100, T1=10, censored=True),
    ]


class TestResolveP:
    def test_literals(self):
        assert resolve_p("1/2", 10) == Fraction(1, 2)
        assert resolve_p("2/30", 10) == Fraction(1, 15)
        assert resolve_p("0.25", 10) == Fraction(1, 4)

    def test_rules(self):
        assert resolve_p("m/n", 20, 2) == Fraction(1, 10)
        assert resolve_p("1/n", 20) == Fraction(1, 20)
        assert resolve_p("1/(10n)", 12) == Fraction(1, 120)
        assert float(resolve_p("m/(4en)", 30, 2)) == pytest.approx(2 / (4 * math.e * 30))

    def test_errors(self):
        with pytest.raises(ValueError):
            resolve_p("half", 10)
        with pytest.raises(ValueError):
            resolve_p("3/2", 10)
        with pytest.raises(ValueError):
            resolve_p("m/n", 10)


class TestRendering:
    def test_rational(self):
        assert render_extended(Fraction(41, 2)) == "41/2 (20.5)"
        assert render_extended(Fraction(1, 3), precision=5) == "1/3 (0.33333)"

    def test_integer(self):
        assert render_extended(Fraction(26)) == "26 (26)"

    def test_infinite(self):
        assert render_extended(INFINITE) == "inf"


class TestPersistence:
    def test_empty_csv_is_header_only(self, tmp_path):
        path = tmp_path / "runs.csv"
        write_runs([], str(path))
        assert path.read_text(encoding="utf-8") == ",".join(RUN_FIELDS) + "\n"

    def test_censored_row_has_empty_n(self, tmp_path):
        path = tmp_path / "runs.csv"
        write_runs(_records(), str(path))
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "algo,n,m,p,seed,trial,T,T1,N,censored"
        assert lines[1] == "mahh-onebit,8,2,0.25,123,0,40,3,2,false"
        assert lines[2] == "mahh-onebit,8,2,0.25,456,1,100,10,,true"

    def test_censored_json_has_null(self, tmp_path):
        path = tmp_path / "runs.jsonl"
        write_runs(_records(), str(path), "jsonl")
        rows = [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
        assert rows[1]["N"] is None
        assert list(rows[0]) == RUN_FIELDS

    @pytest.mark.parametrize("fmt", ["csv", "jsonl"])
    def test_read_back(self, tmp_path, fmt):
        path = tmp_path / f"runs.{fmt}"
        write_runs(_records(), str(path), fmt)
        assert read_runs(str(path), fmt) == _records()

    def test_write_failure_names_path(self, tmp_path):
        target = tmp_path / "missing" / "runs.csv"
        with pytest.raises(PersistenceError, match="missing"):
            write_runs(_records(), str(target))

    def test_phase_rows(self, tmp_path):
        path = tmp_path / "phases.csv"
        trace = PhaseTrace(P=[3, 4, 6, 7], N=3, complete=True)
        write_phases([(_records()[0], trace)], str(path))
        assert path.read_text(encoding="utf-8").splitlines() == [
            "trial,phase_index,length,ended_at_optimum",
            "0,1,1,false",
            "0,2,2,false",
            "0,3,1,true",
        ]


class TestCommands:
    def test_exact_anchor(self):
        result = runner.invoke(app, ["exact", "--n", "4", "--m", "2", "--p", "1/2", "--start", "level=3"])
        assert result.exit_code == 0, result.output
        assert "41/2 (20.5)" in result.output

    def test_exact_uniform_and_levels(self):
        result = runner.invoke(app, ["exact", "--n", "4", "--m", "2", "--p", "1/2", "--show-levels"])
        assert result.exit_code == 0, result.output
        assert "753/32 (23.53125)" in result.output
        assert "h[0]: 57/2 (28.5)" in result.output
        assert "phase_success_probability: 1/16 (0.0625)" in result.output

    def test_exact_infinite(self):
        result = runner.invoke(app, ["exact", "--n", "4", "--m", "2", "--p", "0"])
        assert result.exit_code == 0, result.output
        assert "expected_runtime[start=uniform-random]: inf" in result.output

    def test_bounds(self):
        result = runner.invoke(app, ["bounds", "--n", "10", "--m", "2"])
        assert result.exit_code == 0, result.output
        assert "onebit_lower_bound_term: 120 " in result.output
        assert "onebit_upper_bound_expr: 500 (up to constants)" in result.output

    def test_simulate_is_byte_identical(self, tmp_path):
        outputs = []
        for name in ("a.csv", "b.csv"):
            path = tmp_path / name
            result = runner.invoke(app, [
                "simulate", "--algo", "mahh-onebit", "--n", "8", "--m", "2", "--p", "0.25",
                "--trials", "100", "--seed", "7", "--output", str(path),
            ])
            assert result.exit_code == 0, result.output
            outputs.append(path.read_bytes())
        assert outputs[0] == outputs[1]
        assert outputs[0].count(b"\n") == 101

    def test_simulate_to_stdout(self):
        result = runner.invoke(app, [
            "simulate", "--algo", "rls", "--fitness", "onemax", "--n", "10", "--trials", "3", "--seed", "1",
        ])
        assert result.exit_code == 0, result.output
        assert result.output.splitlines()[0] == ",".join(RUN_FIELDS)
        assert len(result.output.splitlines()) == 4

    def test_compare_passes(self):
        result = runner.invoke(app, [
            "compare", "--n", "6", "--m", "2", "--p", "1/2", "--trials", "2000", "--seed", "3",
        ])
        assert result.exit_code == 0, result.output
        assert "PASS" in result.output

    def test_compare_fails_on_censoring(self):
        result = runner.invoke(app, [
            "compare", "--n", "8", "--m", "2", "--p", "1/100", "--trials", "5", "--cap", "3",
        ])
        assert result.exit_code == 1

    def test_scaling_exact(self):
        result = runner.invoke(app, ["scaling", "--m", "2", "--n", "8", "--n", "12", "--n", "16", "--n", "20"])
        assert result.exit_code == 0, result.output
        slope = float(result.output.split("slope: ")[1].splitlines()[0])
        assert 2.5 <= slope <= 3.5

    def test_scaling_simulate_excludes_censored_runs(self):
        # p = 0 strands every run that reaches the local optimum
        result = runner.invoke(app, [
            "scaling", "--m", "2", "--n", "4", "--n", "5", "--p", "0", "--mode", "simulate",
            "--trials", "400", "--cap", "50", "--seed", "1",
        ])
        assert result.exit_code == 0, result.output
        lines = result.output.splitlines()
        assert lines[0] == "n,mean,se,censored"
        rows = [line.split(",") for line in lines if line.startswith(("4,", "5,"))]
        assert len(rows) == 2
        for _, mean, _, censored in rows:
            assert 0 < int(censored) < 400
            assert float(mean) <= 1.0

    def test_scaling_simulate_fails_when_every_run_is_capped(self):
        result = runner.invoke(app, [
            "scaling", "--m", "2", "--n", "8", "--n", "12", "--p", "0", "--mode", "simulate",
            "--trials", "20", "--cap", "50", "--start", "local-optimum",
        ])
        assert result.exit_code == 1
        assert "no slope" in result.output
        assert "slope:" not in result.output

    def test_malformed_jobs_variable_exits_two(self, monkeypatch):
        monkeypatch.setenv("MAHH_LAB_JOBS", "many")
        result = runner.invoke(app, ["simulate", "--n", "8", "--m", "2", "--p", "1/4", "--trials", "2"])
        assert result.exit_code == 2
        assert "MAHH_LAB_JOBS" in result.output

    def test_jobs_variable_sets_default(self, monkeypatch):
        monkeypatch.setenv("MAHH_LAB_JOBS", "2")
        result = runner.invoke(app, ["simulate", "--n", "8", "--m", "2", "--p", "1/4", "--trials", "4", "--seed", "9"])
        monkeypatch.delenv("MAHH_LAB_JOBS")
        serial = runner.invoke(app, ["simulate", "--n", "8", "--m", "2", "--p", "1/4", "--trials", "4", "--seed", "9"])
        assert result.exit_code == 0, result.output
        assert result.output == serial.output

    def test_drift(self):
        result = runner.invoke(app, [
            "drift", "--n", "10", "--m", "2", "--p", "0.2", "--level", "5", "--samples", "5000", "--seed", "4",
        ])
        assert result.exit_code == 0, result.output
        row = result.output.splitlines()[1].split(",")
        assert row[0] == "5" and row[1] == "3"
        assert row[5] == "exact"

    def test_phases(self):
        result = runner.invoke(app, ["phases", "--n", "6", "--m", "2", "--p", "m/n", "--trials", "200", "--seed", "2"])
        assert result.exit_code == 0, result.output
        assert "runs: 200, completed: 200" in result.output
        assert "phase_length_exact:" in result.output
        assert "reference=exact" in result.output

    def test_argument_errors_exit_two(self):
        assert runner.invoke(app, ["exact", "--n", "4", "--m", "4", "--p", "1/2"]).exit_code == 2
        assert runner.invoke(app, ["exact", "--n", "4", "--m", "2", "--p", "two"]).exit_code == 2
        assert runner.invoke(app, ["simulate", "--algo", "nope", "--n", "8", "--m", "2"]).exit_code == 2
        assert runner.invoke(app, ["simulate", "--n", "8", "--m", "2", "--trials", "0"]).exit_code == 2
        assert runner.invoke(app, ["exact", "--n", "4"]).exit_code == 2

    def test_compare_rejects_global_mutation(self):
        result = runner.invoke(app, ["compare", "--algo", "mahh-global", "--n", "8", "--m", "2", "--p", "0.1"])
        assert result.exit_code == 2

    def test_run_named_experiment(self, tmp_path):
        path = tmp_path / "experiments.json"
        path.write_text(json.dumps({"experiments": [
            {"experiment_id": "anchor", "command": "exact", "n": 4, "m": 2, "p": "1/2", "start": "level=3"},
        ]}), encoding="utf-8")
        result = runner.invoke(app, ["run", "anchor", "--experiments", str(path)])
        assert result.exit_code == 0, result.output
        assert "41/2 (20.5)" in result.output
        assert runner.invoke(app, ["run", "missing", "--experiments", str(path)]).exit_code == 2
