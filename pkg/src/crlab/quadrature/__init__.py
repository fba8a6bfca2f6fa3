"""Monte Carlo integration over Korányi balls and growth exponents."""

from crlab.quadrature.geometry import Dilation, KoranyiBall, gauge, gauge4_exact, unit_ball_volume
from crlab.quadrature.montecarlo import (
    BallSample,
    NonFiniteSampleError,
    integrate,
    integrate_shells,
    sample_ball,
)
from crlab.quadrature.growth import (
    DEFAULT_RADII,
    check_growth_range,
    check_integral_range,
    check_th2_hypotheses,
    fit_slope,
    growth_bound,
    growth_exponent,
    integral_range,
    radii_from_exponents,
    write_series_csv,
)

__all__ = [
    "BallSample",
    "DEFAULT_RADII",
    "Dilation",
    "KoranyiBall",
    "NonFiniteSampleError",
    "check_growth_range",
    "check_integral_range",
    "check_th2_hypotheses",
    "fit_slope",
    "gauge",
    "gauge4_exact",
    "growth_bound",
    "growth_exponent",
    "integral_range",
    "integrate",
    "integrate_shells",
    "radii_from_exponents",
    "sample_ball",
    "unit_ball_volume",
    "write_series_csv",
]
