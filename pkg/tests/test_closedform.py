"""Tests for the extremal family: exact residuals, tensors, conventions and files."""

import math
from fractions import Fraction

import numpy as np
import pytest

from crlab.algebra import I, GaussianRational
from crlab.closedform import (
    HPoint,
    ParameterError,
    determine_convention,
    e2f,
    eval_u,
    eval_u_squared,
    eval_w,
    jets_at,
    load_solution,
    make_solution,
    pointwise_decay_check,
    random_point,
    random_solution,
    exact_residual,
    save_solution,
    solution_check,
    tensors_at,
)


@pytest.fixture
def standard2():
    return make_solution(2, [0, 0], I)


class TestParameters:
    def test_admissible(self):
        sol = make_solution(1, [GaussianRational(1, 1)], GaussianRational(0, 1))
        assert sol.N == 2

    @pytest.mark.parametrize(
        "n, mu, lam, convention",
        [
            (0, [], I, "z"),
            (2, [0], I, "z"),
            (1, [0], I, "w"),
            (1, [0], GaussianRational(3), "z"),
            (1, [GaussianRational(2)], I, "z"),
        ],
    )
    def test_inadmissible(self, n, mu, lam, convention):
        with pytest.raises(ParameterError):
            make_solution(n, mu, lam, convention)

    def test_pairing_conventions(self):
        sol = make_solution(1, [GaussianRational(1)], GaussianRational(0, 1))
        z = [GaussianRational(0, 1)]
        assert sol.pairing(z) == I
        assert sol.with_convention("zbar").pairing(z) == -I


class TestExactEvaluation:
    def test_origin_of_standard_solution(self, standard2):
        origin = HPoint.of([0, 0])
        assert eval_w(standard2, origin) == I
        assert eval_u_squared(standard2, origin) == 16
        assert eval_u(standard2, origin) == pytest.approx(4.0)
        assert e2f(standard2, origin) == 1
        assert exact_residual(standard2, origin).is_zero()

    @pytest.mark.parametrize("n", [1, 2])
    def test_residual_and_tensors_vanish(self, n):
        rng = np.random.default_rng(100 + n)
        for _ in range(4):
            sol = random_solution(rng, n)
            for _ in range(5):
                p = random_point(rng, n)
                assert exact_residual(sol, p).is_zero()
                assert tensors_at(sol, p).nonzero() == []

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [1, 2])
    def test_residual_vanishes_on_full_grid(self, n):
        rng = np.random.default_rng(n)
        for _ in range(20):
            seed = int(rng.integers(1 << 30))
            report = solution_check(random_solution(rng, n), points=100, seed=seed)
            assert report.passed

    def test_wrong_e2f_coefficient_is_detected(self, standard2):
        p = HPoint.of([GaussianRational(1, 2), 0], Fraction(1, 3))
        assert not exact_residual(standard2, p, e2f_coefficient=3).is_zero()

    def test_point_dimension_must_match(self, standard2):
        with pytest.raises(ParameterError):
            jets_at(standard2, HPoint.of([0]))

    def test_float_arrays_match_exact_values(self):
        rng = np.random.default_rng(4)
        sol = random_solution(rng, 2)
        p = random_point(rng, 2)
        z = np.array([[complex(v) for v in p.z]])
        t = np.array([float(p.t)])
        assert sol.u_array(z, t)[0] == pytest.approx(eval_u(sol, p))
        assert sol.e2f_array(z, t)[0] == pytest.approx(float(e2f(sol, p)))
        assert sol.grad2_array(z, t)[0] == pytest.approx(complex(jets_at(sol, p).grad2()).real)


class TestConvention:
    def test_holomorphic_pairing_wins(self):
        finding = determine_convention(n=2, solutions=3, points=2, seed=0)
        assert finding.convention == "z"
        assert finding.zero_residuals["z"] == finding.trials == 6
        assert finding.zero_residuals["zbar"] < finding.trials
        assert "sum mu_a z_a" in finding.describe()

    def test_conjugate_pairing_fails_with_nonzero_mu(self):
        sol = make_solution(
            2, [GaussianRational(1), GaussianRational(0, 1)], GaussianRational(0, 2), "zbar"
        )
        p = HPoint.of([GaussianRational(1, 2), GaussianRational(-1, 3)], Fraction(2, 5))
        assert not exact_residual(sol, p).is_zero()


class TestParameterFiles:
    def test_save_then_load(self, tmp_path):
        sol = make_solution(2, [GaussianRational(Fraction(1, 2), -1), 0], GaussianRational(3, 2))
        path = tmp_path / "sol.env"
        save_solution(sol, path)
        assert load_solution(path) == sol

    def test_handwritten_file(self, tmp_path):
        path = tmp_path / "params.env"
        path.write_text(
            "# a member with mu = 0\nn = 1\nlambda_re = -3/4\nlambda_im = 2\nconvention = z\n",
            encoding="utf-8",
        )
        sol = load_solution(path)
        assert sol.n == 1
        assert sol.lam == GaussianRational(Fraction(-3, 4), 2)
        assert sol.mu == (GaussianRational(0),)

    @pytest.mark.parametrize(
        "text",
        ["n = 1\nlambda_re = 0\n", "n = 1\nlambda_im = abc\n", "n = 1/2\nlambda_im = 1\n"],
    )
    def test_bad_files(self, tmp_path, text):
        path = tmp_path / "bad.env"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(ParameterError):
            load_solution(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParameterError):
            load_solution(tmp_path / "absent.env")


class TestChecks:
    def test_solution_check_report(self, standard2):
        report = solution_check(standard2, points=10, seed=1, decay_samples=500)
        assert report.passed
        assert report.points == 10
        assert report.decay_constant is not None and report.decay_constant > 0

    def test_no_decay_constant_for_n1(self):
        report = solution_check(make_solution(1, [0], I), points=5, seed=1)
        assert report.passed
        assert report.decay_constant is None

    def test_decay_constant_is_bounded(self):
        sol = make_solution(3, [0, 0, 0], I)
        constant = pointwise_decay_check(sol, samples=1000, seed=0)
        assert 0 < constant <= 8 * math.sqrt(2)

    def test_decay_needs_samples(self, standard2):
        with pytest.raises(ValueError):
            pointwise_decay_check(standard2, samples=0)
