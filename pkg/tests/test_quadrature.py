"""Tests for Korányi geometry, Monte Carlo integration and growth exponents."""

import csv
import math
import re
from fractions import Fraction

import numpy as np
import pytest

from crlab.algebra import I, GaussianRational
from crlab.closedform import ParameterError, make_solution
from crlab.models import QuadratureEstimate
from crlab.quadrature import (
    Dilation,
    KoranyiBall,
    NonFiniteSampleError,
    check_growth_range,
    check_th2_hypotheses,
    fit_slope,
    gauge,
    gauge4_exact,
    growth_bound,
    growth_exponent,
    integral_range,
    integrate,
    integrate_shells,
    radii_from_exponents,
    sample_ball,
    unit_ball_volume,
    write_series_csv,
)


def ones(z: np.ndarray, t: np.ndarray) -> np.ndarray:
    return np.ones(len(t))


def abs2_z(z: np.ndarray, t: np.ndarray) -> np.ndarray:
    return np.sum(np.abs(z) ** 2, axis=-1)


@pytest.fixture
def standard2():
    return make_solution(2, [0, 0], I)


class TestGeometry:
    def test_gauge(self):
        z = np.array([[1 + 0j], [0j]])
        t = np.array([0.0, 16.0])
        assert gauge(z, t) == pytest.approx([1.0, 4.0])

    def test_unit_ball_volume(self):
        assert unit_ball_volume(1) == pytest.approx(math.pi**2 / 2)
        with pytest.raises(ValueError):
            unit_ball_volume(0)

    def test_dilation_scales_gauge(self):
        rng = np.random.default_rng(1)
        z = rng.normal(size=(50, 2)) + 1j * rng.normal(size=(50, 2))
        t = rng.normal(size=50)
        dz, dt = Dilation(3.0).apply(z, t)
        assert gauge(dz, dt) == pytest.approx(3.0 * gauge(z, t))

    def test_exact_dilation(self):
        z = (GaussianRational(1, 2),)
        t = Fraction(1, 3)
        dz, dt = Dilation(Fraction(2)).apply_exact(z, t)
        assert gauge4_exact(dz, dt) == 16 * gauge4_exact(z, t)

    def test_ball(self):
        ball = KoranyiBall(2, 2.0)
        assert ball.homogeneous_dimension == 6
        assert ball.volume() == pytest.approx(64 * unit_ball_volume(2))
        assert ball.box_volume() == pytest.approx(4**4 * 2 * 4)
        assert ball.contains(np.array([[1 + 0j, 0j]]), np.array([0.0])).all()

    @pytest.mark.parametrize("n, radius", [(0, 1.0), (1, 0.0), (1, -1.0)])
    def test_invalid_ball(self, n, radius):
        with pytest.raises(ValueError):
            KoranyiBall(n, radius)

    def test_invalid_dilation(self):
        with pytest.raises(ValueError):
            Dilation(0)


class TestSampling:
    def test_points_lie_in_ball(self):
        ball = KoranyiBall(1, 2.0)
        (stream,) = sample_ball(ball, 5000, seed=3)
        assert len(stream.t) == 5000
        assert (gauge(stream.z, stream.t) < 2.0).all()

    def test_acceptance_matches_volume_ratio(self):
        ball = KoranyiBall(1, 1.0)
        (stream,) = sample_ball(ball, 20000, seed=4)
        assert stream.acceptance == pytest.approx(ball.volume() / ball.box_volume(), abs=0.02)

    def test_shell_sampling(self):
        ball = KoranyiBall(2, 2.0)
        streams = sample_ball(ball, 3001, seed=5, workers=3, inner_radius=1.0)
        assert [len(s.t) for s in streams] == [1001, 1000, 1000]
        for s in streams:
            rho = gauge(s.z, s.t)
            assert ((rho >= 1.0) & (rho < 2.0)).all()

    @pytest.mark.parametrize(
        "samples, workers, inner", [(0, 1, 0.0), (10, 0, 0.0), (10, 1, 2.0), (10, 1, -0.5)]
    )
    def test_invalid_arguments(self, samples, workers, inner):
        with pytest.raises(ValueError):
            sample_ball(KoranyiBall(1, 2.0), samples, 0, workers, inner)


class TestIntegrate:
    def test_constant_integrand_gives_volume(self):
        ball = KoranyiBall(1, 2.0)
        estimate = integrate(ones, ball, 1000, seed=3)
        assert estimate.stderr > 0
        assert abs(estimate.value - ball.volume()) <= 4 * estimate.stderr
        assert estimate.samples == 1000

    def test_constant_integrand_comes_from_the_acceptance_rate(self):
        ball = KoranyiBall(2, 1.0)
        estimate = integrate(ones, ball, 500, seed=8)
        (stream,) = sample_ball(ball, 500, seed=8)
        assert estimate.value == pytest.approx(ball.box_volume() * stream.acceptance)
        assert estimate.value != pytest.approx(ball.volume(), rel=1e-12)

    def test_excluded_ball(self):
        estimate = integrate(ones, KoranyiBall(1, 2.0), 1000, seed=3, excluded_radius=1.0)
        assert abs(estimate.value - 15 * math.pi**2 / 2) <= 4 * estimate.stderr

    @pytest.mark.parametrize("radius", [2.0, 4.0, 8.0])
    def test_volume_scales_with_homogeneous_dimension(self, radius):
        unit = integrate(ones, KoranyiBall(2, 1.0), 1000, seed=1)
        scaled = integrate(ones, KoranyiBall(2, radius), 1000, seed=2)
        ratio = scaled.value / unit.value
        relative = math.hypot(unit.stderr / unit.value, scaled.stderr / scaled.value)
        assert abs(ratio / radius**6 - 1) <= 4 * relative

    def test_deterministic_for_seed_and_workers(self):
        ball = KoranyiBall(2, 1.5)
        first = integrate(abs2_z, ball, 4000, seed=11, workers=2)
        second = integrate(abs2_z, ball, 4000, seed=11, workers=2)
        other = integrate(abs2_z, ball, 4000, seed=12, workers=2)
        assert first == second
        assert first.value != other.value

    def test_estimate_within_error_bars(self):
        # slicing in t: ∫_{B_1} |z|² = ∫ π(1 - t²)/2 dt = 2π/3 on H^1
        ball = KoranyiBall(1, 1.0)
        estimate = integrate(abs2_z, ball, 200_000, seed=2)
        exact = 2 * math.pi / 3
        assert abs(estimate.value - exact) <= 5 * estimate.stderr

    def test_non_finite_integrand(self):
        def bad(z: np.ndarray, t: np.ndarray) -> np.ndarray:
            return np.full(len(t), np.nan)

        with pytest.raises(NonFiniteSampleError) as info:
            integrate(bad, KoranyiBall(2, 1.0), 100, seed=0)
        assert len(info.value.point) == 3

    def test_shells_accumulate(self):
        estimates = integrate_shells(ones, 1, [1.0, 2.0, 4.0], 500, seed=6)
        base = unit_ball_volume(1)
        expected = [base, 16 * base, 256 * base]
        assert [e.value for e in estimates] == pytest.approx(expected, rel=0.02)
        assert [e.radius for e in estimates] == [1.0, 2.0, 4.0]

    def test_shells_need_increasing_radii(self):
        with pytest.raises(ValueError):
            integrate_shells(ones, 1, [2.0, 1.0], 100)


class TestGrowth:
    @pytest.mark.parametrize("n, q, r", [(2, 4, 0), (2, 2.9, 1), (1, 0, 2), (3, 0, 0)])
    def test_admissible_range(self, n, q, r):
        check_growth_range(n, q, r)

    @pytest.mark.parametrize(
        "n, q, r, fragment",
        [
            (2, 4.5, 0, "q in [0, n+2]"),
            (2, 3, 1, "q in [0, n+2-r)"),
            (2, 1, 3, "r in [0, 2]"),
            (2, 1, -0.1, "r in [0, 2]"),
            (1, -1, 0, "q in [0, n+2]"),
        ],
    )
    def test_inadmissible_range(self, n, q, r, fragment):
        with pytest.raises(ParameterError, match=re.escape(fragment)):
            check_growth_range(n, q, r)

    def test_bound(self):
        assert growth_bound(2, 2, 0) == 4.0
        assert growth_bound(1, Fraction(1, 2), 1) == 2.5

    @pytest.mark.parametrize(
        "n, q, expected",
        [
            (2, 3, "critical"),
            (2, Fraction(5, 2), None),
            (2, 2, "subcritical"),
            (2, Fraction(11, 5), None),
            (1, 3, "subcritical"),
            (1, 4, "critical"),
            (1, 3.5, "critical"),
            (1, 5, None),
        ],
    )
    def test_integral_range(self, n, q, expected):
        assert integral_range(n, q) == expected

    def test_fit_slope_of_power_law(self):
        estimates = [
            QuadratureEstimate(radius=R, value=3 * R**4, stderr=0, samples=1, seed=0)
            for R in (1.0, 2.0, 4.0)
        ]
        assert fit_slope(estimates) == pytest.approx(4.0)

    def test_fit_slope_errors(self):
        single = [QuadratureEstimate(radius=1.0, value=1.0, stderr=0, samples=1, seed=0)]
        with pytest.raises(ValueError):
            fit_slope(single)
        negative = single + [
            QuadratureEstimate(radius=2.0, value=-1.0, stderr=0, samples=1, seed=0)
        ]
        with pytest.raises(ValueError):
            fit_slope(negative)

    def test_volume_growth_is_homogeneous_dimension(self, standard2):
        report = growth_exponent(standard2, 0, 0, radii_from_exponents([0, 1, 2, 3]), 2000, seed=1)
        assert report.slope == pytest.approx(6.0, abs=0.1)
        assert report.bound == 6.0
        assert report.passed

    def test_exponential_growth_respects_bound(self, standard2):
        # e^{2f} decays like ρ^{-4}, so the integral grows like R²
        report = growth_exponent(
            standard2, 2, 0, radii_from_exponents([2, 3, 4, 5]), 20_000, seed=2
        )
        assert report.bound == 4.0
        assert report.slope == pytest.approx(2.0, abs=0.5)
        assert report.slope <= report.bound + report.tolerance
        assert report.to_check().status == "pass"

    def test_growth_rejects_inadmissible(self, standard2):
        with pytest.raises(ParameterError):
            growth_exponent(standard2, 5, 0, samples=10)

    def test_th2_rejects_gap(self, standard2):
        with pytest.raises(ParameterError, match="neither"):
            check_th2_hypotheses(standard2, Fraction(11, 5), samples=10)

    def test_csv(self, standard2, tmp_path):
        report = growth_exponent(standard2, 0, 0, [1.0, 2.0], 500, seed=0)
        path = tmp_path / "series.csv"
        write_series_csv(report, path)
        with open(path, newline="", encoding="utf-8") as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ["R", "estimate", "stderr"]
        assert len(rows) == 3
        assert float(rows[2][0]) == 2.0
        assert float(rows[2][1]) == pytest.approx(report.estimates[1].value)

    def test_radii_from_exponents(self):
        assert radii_from_exponents([0, 1, 3]) == [1.0, 2.0, 8.0]


@pytest.mark.slow
class TestFullGrowthRuns:
    @pytest.mark.parametrize("q, r", [(0, 0), (2, 0), (1, 1), (4, 0), (2, 2)])
    def test_default_grid(self, standard2, q, r):
        if r > 0 and q >= 4 - r:
            pytest.skip("outside the open range")
        report = growth_exponent(standard2, q, r, samples=200_000, seed=3, workers=2)
        assert report.passed, report.to_check().witness

    @pytest.mark.parametrize("q", [1, 2, 3])
    def test_integrals_of_powers_of_u(self, standard2, q):
        report = check_th2_hypotheses(standard2, q, samples=200_000, seed=4, workers=2)
        assert report.passed, report.to_check().witness
