"""Korányi gauge, balls and dilations of ``H^n``."""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

import numpy as np

from crlab.algebra.gaussian import GaussianRational


def gauge(z: np.ndarray, t: np.ndarray) -> np.ndarray:
    """``ρ = (|z|⁴ + t²)^{1/4}`` for ``z`` of shape ``(N, n)`` and ``t`` of shape ``(N,)``."""
    z2 = np.sum(np.abs(z) ** 2, axis=-1)
    return (z2 * z2 + t * t) ** 0.25


def gauge4_exact(z: Tuple[GaussianRational, ...], t: Fraction) -> Fraction:
    """``ρ⁴ = |z|⁴ + t²`` at an exact point."""
    z2 = sum((v.abs2() for v in z), Fraction(0))
    return z2 * z2 + t * t


def unit_ball_volume(n: int) -> float:
    """``vol(B_1) = (π^n / n!) · √π · Γ(n/2 + 1) / Γ(n/2 + 3/2)``.

    Slicing at height ``t`` leaves a Euclidean ball in ``ℂ^n`` of radius
    ``(1 - t²)^{1/4}``; integrating its volume over ``|t| < 1`` gives the formula.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    return (
        math.pi**n
        / math.factorial(n)
        * math.sqrt(math.pi)
        * math.gamma(n / 2 + 1)
        / math.gamma(n / 2 + 1.5)
    )


@dataclass(frozen=True)
class Dilation:
    """``δ_s(z, t) = (s z, s² t)``."""

    scale: Union[float, Fraction]

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError("dilation scale must be positive")

    def apply(self, z: np.ndarray, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        s = float(self.scale)
        return z * s, t * (s * s)

    def apply_exact(
        self, z: Tuple[GaussianRational, ...], t: Fraction
    ) -> Tuple[Tuple[GaussianRational, ...], Fraction]:
        s = Fraction(self.scale)
        return tuple(v * s for v in z), t * s * s


@dataclass(frozen=True)
class KoranyiBall:
    """``B_R = {(z, t) : (|z|⁴ + t²)^{1/4} < R}`` in ``H^n``."""

    n: int
    radius: float

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.n < 1:
            raise ValueError("n must be a positive integer")

    def contains(self, z: np.ndarray, t: np.ndarray) -> np.ndarray:
        return gauge(z, t) < self.radius

    @property
    def homogeneous_dimension(self) -> int:
        return 2 * self.n + 2

    def volume(self) -> float:
        return self.radius**self.homogeneous_dimension * unit_ball_volume(self.n)

    def box_volume(self) -> float:
        """Volume of ``|x_α|, |y_α| ≤ R``, ``|t| ≤ R²``."""
        return (2 * self.radius) ** (2 * self.n) * 2 * self.radius**2
