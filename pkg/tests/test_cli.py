"""Tests for the command-line interface."""

import json

import pytest

from crlab.api.client import LabClient
from crlab.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, parse_m, parse_point, run_command
from crlab.quadrature import NonFiniteSampleError
from tests.test_config import NAMES

STANDARD_F = "-log(t^2 + (x1^2 + y1^2 + 1)^2)/2"


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in NAMES:
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)


def _report(capsys):
    return json.loads(capsys.readouterr().out)


class TestVerify:
    def test_passing_identity(self, capsys):
        assert run_command(["verify", "lemma1", "--n", "1", "--m", "formal"]) == EXIT_OK
        report = _report(capsys)
        assert report["command"] == "verify"
        assert report["elapsed"] is None
        assert report["results"][0]["status"] == "pass"

    def test_mutation_fails_with_witness(self, capsys):
        assert run_command(["verify", "lemma1", "--n", "1", "--mutate", "c1+1"]) == EXIT_FAILED
        report = _report(capsys)
        assert report["results"][0]["status"] == "fail"
        assert report["results"][0]["witness"]

    def test_rational_m(self, capsys):
        assert run_command(["verify", "trace-free", "--n", "1", "--m", "1/2"]) == EXIT_OK
        assert _report(capsys)["inputs"]["m"] == "1/2"

    @pytest.mark.parametrize(
        "argv",
        [
            ["verify", "lemma9"],
            ["verify", "lemma1", "--m", "half"],
            ["verify", "jl", "--mutate", "c1+1"],
            ["verify", "all", "--mutate", "c1+1"],
            ["verify", "lemma1", "--mutate", "c9+1"],
            ["psi", "--m", "1"],
            ["th2-check", "--q", "2.2", "--n", "2"],
            ["eval", "--expr", "x1", "--at", "0,0"],
            ["eval", "--expr", "x2", "--at", "0,0,0"],
        ],
    )
    def test_usage_errors(self, argv, capsys):
        assert run_command(argv) == EXIT_USAGE
        assert "Error" in capsys.readouterr().err

    @pytest.mark.parametrize("n", ["0", "4"])
    def test_dimension_outside_one_to_three(self, n, capsys):
        assert run_command(["verify", "lemma1", "--n", n]) == EXIT_USAGE
        assert "invalid choice" in capsys.readouterr().err

    def test_timing_is_opt_in(self, capsys):
        assert run_command(["verify", "jl", "--n", "1", "--record-timing"]) == EXIT_OK
        assert _report(capsys)["elapsed"] is not None


class TestGrowth:
    def test_volume_growth_passes(self, capsys):
        argv = ["growth", "--q", "0", "--r", "0", "--n", "2", "--samples", "2000"]
        assert run_command(argv) == EXIT_OK
        report = _report(capsys)
        assert report["results"][0]["name"] == "growth:e^(qf)|df|^r[q=0,r=0]"
        assert report["results"][0]["value"] == pytest.approx(6.0, abs=0.3)

    def test_out_of_range_exponents(self, capsys):
        assert run_command(["growth", "--q", "5", "--r", "0", "--n", "2"]) == EXIT_USAGE
        assert "Error" in capsys.readouterr().err

    def test_missing_exponent(self):
        assert run_command(["growth", "--r", "0"]) == EXIT_USAGE

    def test_csv_series(self, tmp_path, capsys):
        path = tmp_path / "series.csv"
        argv = ["growth", "--q", "0", "--r", "0", "--n", "1", "--samples", "500"]
        assert run_command(argv + ["--csv", str(path)]) == EXIT_OK
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "R,estimate,stderr"
        assert len(lines) == 8

    def test_same_seed_gives_identical_reports(self, capsys):
        argv = ["growth", "--q", "2", "--r", "0", "--n", "2", "--samples", "1000", "--seed", "3"]
        assert run_command(argv) == EXIT_OK
        first = capsys.readouterr().out
        assert run_command(argv) == EXIT_OK
        assert capsys.readouterr().out == first


class TestOtherCommands:
    def test_eval_standard_solution(self, capsys):
        argv = ["eval", "--expr", STANDARD_F, "--at", "0.3,-0.2,0.7"]
        assert run_command(argv) == EXIT_OK
        report = _report(capsys)
        detail = report["details"][0]
        assert abs(complex(*detail["residual"])) <= 1e-9
        assert {r["name"] for r in report["results"]} >= {"commutator", "finite-differences"}

    def test_eval_bad_input(self, capsys):
        assert run_command(["eval", "--expr", "x1 +", "--at", "0,0,0"]) == EXIT_USAGE
        assert run_command(["eval", "--expr", "x1", "--at", "0,a,0"]) == EXIT_USAGE

    def test_domain_violation_is_a_failed_check(self, capsys):
        assert run_command(["eval", "--expr", "log(x1)", "--at", "-1,0,0"]) == EXIT_FAILED
        result = _report(capsys)["results"][-1]
        assert result["name"] == "eval:error"
        assert result["status"] == "fail"
        assert "DomainViolationError" in result["witness"]
        assert "x1" in result["witness"]

    def test_non_finite_sample_is_a_failed_check(self, monkeypatch, capsys):
        def non_finite(*args, **kwargs):
            raise NonFiniteSampleError("integrand value nan", [0j, 0j, 0j])

        monkeypatch.setattr(LabClient, "growth", non_finite)
        argv = ["growth", "--q", "0", "--r", "0", "--n", "2", "--samples", "10"]
        assert run_command(argv) == EXIT_FAILED
        result = _report(capsys)["results"][-1]
        assert result["status"] == "fail"
        assert "NonFiniteSampleError" in result["witness"]
        assert "at [0j, 0j, 0j]" in result["witness"]

    def test_solution_check(self, capsys):
        argv = ["solution-check", "--n", "1", "--points", "5"]
        assert run_command(argv) == EXIT_OK
        names = [r["name"] for r in _report(capsys)["results"]]
        assert names[:2] == ["residual", "tensors"]
        assert "convention" in names

    def test_solution_check_with_params_file(self, tmp_path, capsys):
        path = tmp_path / "params.env"
        path.write_text("n = 1\nmu1_re = 1\nlambda_im = 1\n", encoding="utf-8")
        assert run_command(["solution-check", "--params", str(path), "--points", "3"]) == EXIT_OK

    def test_coeffs(self, capsys):
        assert run_command(["coeffs", "--samples", "300"]) == EXIT_OK
        assert _report(capsys)["results"][0]["name"] == "coefficient-bounds"

    def test_psi(self, capsys):
        argv = ["psi", "--length", "1", "--m", "1/2", "--samples", "200"]
        assert run_command(argv) == EXIT_OK
        names = [r["name"] for r in _report(capsys)["results"]]
        assert names == ["psi-symbolic", "psi-numeric", "psi-positive-definite"]

    def test_tensors(self, capsys):
        assert run_command(["tensors", "--n", "2", "--samples", "50"]) == EXIT_OK
        assert _report(capsys)["results"][0]["status"] == "pass"


class TestSurface:
    def test_help(self):
        assert run_command(["--help"]) == EXIT_OK

    def test_no_command(self, capsys):
        assert run_command([]) == EXIT_USAGE
        assert "Please specify a command" in capsys.readouterr().err

    def test_output_file_and_summary(self, tmp_path, capsys):
        path = tmp_path / "out" / "report.json"
        assert run_command(["verify", "jl", "--n", "1", "--output", str(path)]) == EXIT_OK
        report = json.loads(path.read_text(encoding="utf-8"))
        assert report["command"] == "verify"
        assert "checks passed" in capsys.readouterr().out

    def test_summary_goes_to_stderr_without_output(self, capsys):
        assert run_command(["verify", "jl", "--n", "1"]) == EXIT_OK
        captured = capsys.readouterr()
        json.loads(captured.out)
        assert "checks passed" in captured.err

    def test_config_file_sets_seed(self, tmp_path, capsys):
        path = tmp_path / "crlab.env"
        path.write_text("CRLAB_SEED = 5\n", encoding="utf-8")
        assert run_command(["coeffs", "--samples", "100", "--config", str(path)]) == EXIT_OK
        assert _report(capsys)["seed"] == 5

    def test_flag_beats_config_file(self, tmp_path, capsys):
        path = tmp_path / "crlab.env"
        path.write_text("CRLAB_SEED = 5\n", encoding="utf-8")
        argv = ["coeffs", "--samples", "100", "--config", str(path), "--seed", "9"]
        assert run_command(argv) == EXIT_OK
        assert _report(capsys)["seed"] == 9

    def test_missing_config_file(self, tmp_path):
        assert run_command(["coeffs", "--config", str(tmp_path / "absent.env")]) == EXIT_USAGE

    def test_bad_workers(self):
        assert run_command(["coeffs", "--samples", "10", "--workers", "0"]) == EXIT_USAGE

    def test_malformed_environment_is_a_usage_error(self, monkeypatch, capsys):
        monkeypatch.setenv("CRLAB_WORKERS", "many")
        assert run_command(["coeffs", "--samples", "10"]) == EXIT_USAGE
        assert "CRLAB_WORKERS" in capsys.readouterr().err


class TestParsers:
    def test_parse_m(self):
        assert parse_m("formal") is None
        assert parse_m("2/3") == pytest.approx(2 / 3)
        with pytest.raises(ValueError):
            parse_m("1/0")

    def test_parse_point(self):
        assert parse_point("1, -2.5,3") == [1.0, -2.5, 3.0]
        with pytest.raises(ValueError):
            parse_point("1,,2")
