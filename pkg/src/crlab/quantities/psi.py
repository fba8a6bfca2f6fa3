"""Floating-point forms of ψ, its completion of squares and its positivity."""

import math
from fractions import Fraction
from typing import Dict, Optional, Union

import numpy as np
from tqdm import tqdm

from crlab.models import PsdReport, PsiCheckReport
from crlab.quantities.identities import IdentityId, verify_identity


def coefficients_float(
    m: float, f0: float, s: float, printed_sign: bool = False
) -> Dict[str, complex]:
    """c1..c6 as complex floats at one point (``h = s² + f0²``)."""
    h = s * s + f0 * f0
    p1 = h - m * f0 * f0
    p2 = (5 - 3 * m) * h - m * (1 + m) * f0 * f0
    twist = 2j * m * f0 * s
    sign = 1 if printed_sign else -1
    return {
        "c1": 3 * p1 / h,
        "c2": (p1 - twist) / (3 * p1),
        "c3": -(p1 + twist) / (3 * p1),
        "c4": ((5 - 3 * m) * p1 + 4 * m * (1 - m) * f0 * f0) / (3 * p1),
        "c5": ((4 - 3 * m) * h - m * (2 + m) * f0**2 + 2 * m * m * f0**4 / h) / p2
        + sign * twist * p1 / (h * p2),
        "c6": ((3 - 2 * m) * h + m * (5 - 6 * m) * f0 * f0) / p2,
    }


def _dot(x: np.ndarray, y: np.ndarray) -> complex:
    """``Σ x_α ȳ_α``."""
    return complex(np.sum(x * np.conj(y)))


def psi_expanded_value(
    m: float, f0: float, s: float, D: np.ndarray, E: np.ndarray, G: np.ndarray
) -> float:
    h = s * s + f0 * f0
    p1 = h - m * f0 * f0
    cross = 4 * m * f0 * s
    value = (
        3 * p1 * _dot(G, G).real
        + ((2 - m) * h + m * f0 * f0) * (_dot(D, D).real + _dot(E, E).real)
        + 2 * p1 * (_dot(G, D).real - _dot(G, E).real)
        - cross * (_dot(G, D).imag + _dot(G, E).imag)
        + 2 * ((1 - m) * h + m * f0 * f0) * _dot(D, E).real
        - cross * _dot(D, E).imag
    )
    return value / h


def psi_squares_value(
    m: float,
    f0: float,
    s: float,
    D: np.ndarray,
    E: np.ndarray,
    G: np.ndarray,
    printed_sign: bool = False,
) -> float:
    c = coefficients_float(m, f0, s, printed_sign)
    first = G + c["c2"] * D + c["c3"] * E
    second = D + c["c5"] * E
    value = c["c1"] * _dot(first, first) + c["c4"] * _dot(second, second) + c["c6"] * _dot(E, E)
    return float(value.real)


def psi_first_value(
    m: float, f0: float, s: float, D: np.ndarray, E: np.ndarray, G: np.ndarray
) -> float:
    h = s * s + f0 * f0
    g = s - 1j * f0
    squares = _dot(G, G) + _dot(G + D, G + D) + _dot(G - E, G - E) + _dot(D + E, D + E)
    x = 1j * f0 * (D - 3 * E + 3 * G) - g * (D + E)
    y = s * np.conj(D + E) + 1j * f0 * np.conj(G)
    return float(squares.real + m / h * complex(np.sum(x * y)).real)


def _random_vector(rng: np.random.Generator, length: int) -> np.ndarray:
    return rng.normal(size=length) + 1j * rng.normal(size=length)


def psi_squares_check(
    mode: str = "symbolic",
    length: int = 1,
    m: Optional[Union[int, Fraction]] = None,
    seed: int = 0,
    samples: int = 10_000,
    tolerance: float = 1e-10,
    show_progress: bool = False,
) -> PsiCheckReport:
    """Compare ψ's expanded form with its completed squares.

    Args:
        mode: ``"symbolic"`` normalizes the difference in the free algebra;
            ``"numeric"`` compares both forms on random samples with
            ``m ∈ [0, 1]`` (or the given ``m``).
        length: Length of the vectors D, E, G.
        m: Rational ``m`` for the symbolic run; ``None`` keeps it formal.
        seed: Seed of the numeric sampler.
        samples: Number of numeric samples.
        tolerance: Allowed relative deviation in numeric mode.
        show_progress: Show a progress bar for numeric sampling.

    Raises:
        ValueError: For an unknown mode.
    """
    if mode == "symbolic":
        symbolic = verify_identity(IdentityId.PSI_SQUARES, length, m)
        return PsiCheckReport(length=length, mode=mode, symbolic=symbolic, tolerance=tolerance)
    if mode != "numeric":
        raise ValueError(f"Unknown mode {mode!r}; use 'symbolic' or 'numeric'")

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in tqdm(range(samples), desc="psi samples", disable=not show_progress):
        m_value = float(m) if m is not None else rng.uniform(0.0, 1.0)
        f0 = rng.uniform(-3.0, 3.0)
        s = rng.uniform(1e-3, 3.0)
        D, E, G = (_random_vector(rng, length) for _ in range(3))
        expanded = psi_expanded_value(m_value, f0, s, D, E, G)
        completed = psi_squares_value(m_value, f0, s, D, E, G)
        scale = max(abs(expanded), _dot(D, D).real + _dot(E, E).real + _dot(G, G).real)
        worst = max(worst, abs(expanded - completed) / scale)
    return PsiCheckReport(
        length=length,
        mode=mode,
        samples=samples,
        seed=seed,
        max_relative_error=worst,
        tolerance=tolerance,
    )


def psi_matrix(m: float, f0: float, s: float) -> np.ndarray:
    """Hermitian ``M`` with ψ = v* M v for ``v = (D_α, E_α, G_α)`` at one index."""
    basis = np.eye(3, dtype=complex)

    def form(v: np.ndarray) -> float:
        return psi_expanded_value(m, f0, s, v[0:1], v[1:2], v[2:3])

    matrix = np.zeros((3, 3), dtype=complex)
    for i in range(3):
        matrix[i, i] = form(basis[i])
    for i in range(3):
        for j in range(i + 1, 3):
            diagonal = matrix[i, i].real + matrix[j, j].real
            re = (form(basis[i] + basis[j]) - diagonal) / 2
            im = -(form(basis[i] + 1j * basis[j]) - diagonal) / 2
            matrix[i, j] = re + 1j * im
            matrix[j, i] = re - 1j * im
    return matrix


def psd_check_psi(m: Union[float, Fraction], samples: int = 1000, seed: int = 0) -> PsdReport:
    """Smallest eigenvalue of ψ's coefficient matrix over random ``(f0, s)``.

    ψ is homogeneous of degree zero in ``(f0, s)``, so points are drawn on the
    half circle ``f0 = sin θ``, ``s = cos θ``.

    Raises:
        ValueError: If ``m`` is outside ``[0, 1)``.
    """
    m_value = float(m)
    if not 0 <= m_value < 1:
        raise ValueError("m must lie in [0, 1)")
    rng = np.random.default_rng(seed)
    lowest = math.inf
    worst: Optional[Dict[str, float]] = None
    for theta in rng.uniform(-math.pi / 2, math.pi / 2, size=samples):
        f0, s = math.sin(theta), math.cos(theta)
        if s <= 0:
            continue
        eigenvalue = float(np.linalg.eigvalsh(psi_matrix(m_value, f0, s))[0])
        if eigenvalue < lowest:
            lowest, worst = eigenvalue, {"f0": f0, "s": s}
    return PsdReport(
        m=m_value, samples=samples, seed=seed, min_eigenvalue=lowest, worst_point=worst
    )
