"""Exact lower bounds of c1, c4, c6 and the size of c2, c3, c5 over sampled points."""

from fractions import Fraction
from typing import Dict, Iterator, Tuple

import numpy as np
from tqdm import tqdm

from crlab.algebra.gaussian import GaussianRational
from crlab.models import CoefficientBoundsReport


def coefficients_exact(m: Fraction, f0: Fraction, s: Fraction) -> Dict[str, GaussianRational]:
    """c1..c6 at a rational point, with ``√(|g|² - f0²) = s``.

    Raises:
        ValueError: If ``s`` is not positive.
    """
    if s <= 0:
        raise ValueError("s must be positive")
    h = s * s + f0 * f0
    p1 = h - m * f0 * f0
    p2 = (5 - 3 * m) * h - m * (1 + m) * f0 * f0
    twist = GaussianRational(0, 2 * m * f0 * s)
    return {
        "c1": GaussianRational(3 * p1 / h),
        "c2": (p1 - twist) / (3 * p1),
        "c3": -(twist + p1) / (3 * p1),
        "c4": GaussianRational(((5 - 3 * m) * p1 + 4 * m * (1 - m) * f0 * f0) / (3 * p1)),
        "c5": GaussianRational(((4 - 3 * m) * h - m * (2 + m) * f0**2 + 2 * m * m * f0**4 / h) / p2)
        - twist * (p1 / (h * p2)),
        "c6": GaussianRational(((3 - 2 * m) * h + m * (5 - 6 * m) * f0 * f0) / p2),
    }


def lower_bounds(m: Fraction) -> Dict[str, Fraction]:
    """The lower bounds ``3(1-m)``, ``(5-3m)/3`` and ``(3-2m)/(5-3m)``."""
    return {"c1": 3 * (1 - m), "c4": (5 - 3 * m) / 3, "c6": (3 - 2 * m) / (5 - 3 * m)}


def _abs(value: GaussianRational) -> float:
    return float(value.abs2()) ** 0.5


def sample_points(
    samples: int, seed: int, m_max: Fraction = Fraction(99, 100)
) -> Iterator[Tuple[Fraction, Fraction, Fraction]]:
    """Random rational ``(m, f0, s)`` with ``m`` in hundredths up to ``m_max`` and ``s > 0``."""
    rng = np.random.default_rng(seed)
    top = int(m_max * 100)
    for _ in range(samples):
        m = Fraction(int(rng.integers(0, top + 1)), 100)
        f0 = Fraction(int(rng.integers(-1000, 1001)), int(rng.integers(1, 101)))
        s = Fraction(int(rng.integers(1, 1001)), int(rng.integers(1, 101)))
        yield m, f0, s


def coefficient_bounds_check(
    samples: int = 100_000,
    seed: int = 0,
    m_max: Fraction = Fraction(99, 100),
    show_progress: bool = False,
) -> CoefficientBoundsReport:
    """Check ``c1 ≥ 3(1-m)``, ``c4 ≥ (5-3m)/3``, ``c6 ≥ (3-2m)/(5-3m)`` exactly.

    Also records, per tenth of ``m``, the largest ``|c2| + |c3| + |c5|`` seen;
    that maximum is reported, not asserted.
    """
    violations = {"c1": 0, "c4": 0, "c6": 0}
    first_violation = None
    maxima: Dict[str, float] = {}
    points = sample_points(samples, seed, m_max)
    for m, f0, s in tqdm(points, total=samples, desc="coefficients", disable=not show_progress):
        c = coefficients_exact(m, f0, s)
        for name, bound in lower_bounds(m).items():
            if c[name].re < bound:
                violations[name] += 1
                if first_violation is None:
                    first_violation = f"{name}={c[name]} < {bound} at m={m}, f0={f0}, s={s}"
        bucket = f"{float(m - m % Fraction(1, 10)):.1f}"
        size = _abs(c["c2"]) + _abs(c["c3"]) + _abs(c["c5"])
        maxima[bucket] = max(maxima.get(bucket, 0.0), size)
    return CoefficientBoundsReport(
        samples=samples,
        seed=seed,
        violations=violations,
        first_violation=first_violation,
        max_abs_sum=dict(sorted(maxima.items())),
    )
