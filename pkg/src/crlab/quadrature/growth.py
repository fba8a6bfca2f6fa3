"""Growth exponents of integrals over Korányi balls for the extremal family."""

import csv
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

import numpy as np

from crlab.closedform.solution import ClosedFormSolution, ParameterError
from crlab.models import GrowthReport, QuadratureEstimate
from crlab.quadrature.montecarlo import Integrand, integrate_shells

Number = Union[float, Fraction]

DEFAULT_RADII = tuple(2.0**k for k in range(7))


def check_growth_range(n: int, q: Number, r: Number) -> None:
    """Admissible ``(q, r)`` for the bound ``∫_{B_R} e^{qf}|∂f|^r ≤ C R^{2n+2-q-r}``.

    Raises:
        ParameterError: Naming the violated constraint: ``r ∈ [0, 2]``, and
            ``q ∈ [0, n+2]`` when ``r = 0``, ``q ∈ [0, n+2-r)`` otherwise.
    """
    if not 0 <= r <= 2:
        raise ParameterError(f"r={r} violates r in [0, 2]")
    if r == 0:
        if not 0 <= q <= n + 2:
            raise ParameterError(f"q={q} violates q in [0, n+2] = [0, {n + 2}] for r = 0")
    elif not 0 <= q < n + 2 - r:
        raise ParameterError(f"q={q} violates q in [0, n+2-r) = [0, {n + 2 - r}) for r > 0")


def growth_bound(n: int, q: Number, r: Number) -> float:
    return float(2 * n + 2 - q - r)


def integral_range(n: int, q: Number) -> Optional[str]:
    """Which hypothesis on ``∫_{B_R} u^q`` applies to ``q``.

    ``"critical"`` for ``q ∈ ((2n+1)/n, (2n+2)/n]`` (bound ``R²``),
    ``"subcritical"`` for ``q ∈ [0, (n+2)/n]`` (bound ``R^{2n+2-nq}``), else ``None``.
    """
    q = Fraction(q).limit_denominator(10**6) if isinstance(q, float) else Fraction(q)
    if Fraction(2 * n + 1, n) < q <= Fraction(2 * n + 2, n):
        return "critical"
    if 0 <= q <= Fraction(n + 2, n):
        return "subcritical"
    return None


def check_integral_range(n: int, q: Number) -> str:
    """Like :func:`integral_range`, but an inadmissible ``q`` is an error.

    Raises:
        ParameterError: If ``q`` lies in neither range.
    """
    kind = integral_range(n, q)
    if kind is None:
        raise ParameterError(
            f"q={q} is in neither ((2n+1)/n, (2n+2)/n] = ({Fraction(2 * n + 1, n)}, "
            f"{Fraction(2 * n + 2, n)}] nor [0, (n+2)/n] = [0, {Fraction(n + 2, n)}]"
        )
    return kind


def fit_slope(estimates: Sequence[QuadratureEstimate]) -> float:
    """Least-squares slope of ``log value`` against ``log R``.

    Raises:
        ValueError: With fewer than two radii or a nonpositive estimate.
    """
    if len(estimates) < 2:
        raise ValueError("at least two radii are needed for a slope")
    values = np.array([e.value for e in estimates])
    if np.any(values <= 0):
        raise ValueError("estimates must be positive to fit a growth exponent")
    radii = np.array([e.radius for e in estimates])
    slope, _ = np.polyfit(np.log(radii), np.log(values), 1)
    return float(slope)


def _series(
    quantity: str,
    sol: ClosedFormSolution,
    integrand: Integrand,
    bound: float,
    parameters: Dict[str, float],
    radii: Sequence[float],
    samples: int,
    seed: int,
    workers: int,
    tolerance: float,
    show_progress: bool,
) -> GrowthReport:
    estimates = integrate_shells(
        integrand, sol.n, radii, samples, seed, workers, show_progress=show_progress
    )
    return GrowthReport(
        quantity=quantity,
        n=sol.n,
        parameters=parameters,
        estimates=estimates,
        slope=fit_slope(estimates),
        bound=bound,
        tolerance=tolerance,
    )


def growth_exponent(
    sol: ClosedFormSolution,
    q: Number,
    r: Number,
    radii: Sequence[float] = DEFAULT_RADII,
    samples: int = 1_000_000,
    seed: int = 0,
    workers: int = 1,
    tolerance: float = 0.3,
    show_progress: bool = False,
) -> GrowthReport:
    """Fitted growth of ``R ↦ ∫_{B_R} e^{qf}|∂f|^r`` against ``2n+2-q-r``.

    Raises:
        ParameterError: If ``(q, r)`` is outside the admissible range.
    """
    check_growth_range(sol.n, q, r)
    q_value, r_value = float(q), float(r)

    def integrand(z: np.ndarray, t: np.ndarray) -> np.ndarray:
        return sol.e2f_array(z, t) ** (q_value / 2) * sol.grad2_array(z, t) ** (r_value / 2)

    return _series(
        f"e^(qf)|df|^r[q={q_value:g},r={r_value:g}]",
        sol,
        integrand,
        growth_bound(sol.n, q, r),
        {"q": q_value, "r": r_value},
        radii,
        samples,
        seed,
        workers,
        tolerance,
        show_progress,
    )


def check_th2_hypotheses(
    sol: ClosedFormSolution,
    q: Number,
    radii: Sequence[float] = DEFAULT_RADII,
    samples: int = 1_000_000,
    seed: int = 0,
    workers: int = 1,
    tolerance: float = 0.3,
    show_progress: bool = False,
) -> GrowthReport:
    """Fitted growth of ``R ↦ ∫_{B_R} u^q`` against the bound for ``q``'s range.

    Raises:
        ParameterError: If ``q`` lies in neither range.
    """
    kind = check_integral_range(sol.n, q)
    q_value = float(q)
    bound = 2.0 if kind == "critical" else float(2 * sol.n + 2 - sol.n * q_value)

    def integrand(z: np.ndarray, t: np.ndarray) -> np.ndarray:
        return sol.u_array(z, t) ** q_value

    return _series(
        f"u^q[q={q_value:g},{kind}]",
        sol,
        integrand,
        bound,
        {"q": q_value},
        radii,
        samples,
        seed,
        workers,
        tolerance,
        show_progress,
    )


def write_series_csv(report: GrowthReport, path: Union[str, Path]) -> None:
    """Write ``R,estimate,stderr`` rows."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["R", "estimate", "stderr"])
        for e in report.estimates:
            writer.writerow([repr(e.radius), repr(e.value), repr(e.stderr)])


def radii_from_exponents(exponents: Sequence[int]) -> List[float]:
    return [2.0**k for k in exponents]
