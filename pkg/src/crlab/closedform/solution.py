"""The extremal family ``u = N^{n/2} / |w|^n``.

Here ``w = t + i|z|² + ⟨μ,z⟩ + λ`` and ``N = 4 Im λ - |μ|²``.

Everything here is exact: on the family, ``f = (1/n) ln u - ln 2`` has
``e^{2f} = N / (4|w|²)``, and its CR jets are rational in the point, so the
equation ``Δ_b f = n|∂f|² + n e^{2f}`` and the vanishing of ``D, E, G`` can be
checked with zero tolerance.
"""

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union, cast

import numpy as np
from dotenv import dotenv_values

from crlab.algebra.gaussian import ExactDivisionError, GaussianRational, to_fraction
from crlab.numeric.cr import (
    CoordinateSeries,
    CRJets,
    CRTensors,
    cr_jets,
    cr_tensors,
    yamabe_residual,
)
from crlab.numeric.taylor import Taylor

CONVENTIONS = ("z", "zbar")
Exact = Union[int, Fraction, str]


class ParameterError(ValueError):
    """Raised for inadmissible solution parameters or parameter files."""


@dataclass(frozen=True)
class HPoint:
    """A point ``(z, t)`` of ``H^n`` with exact coordinates."""

    z: Tuple[GaussianRational, ...]
    t: Fraction

    @classmethod
    def of(cls, z: Sequence[Union[GaussianRational, int, Fraction]], t: Exact = 0) -> "HPoint":
        return cls(tuple(GaussianRational.coerce(v) for v in z), to_fraction(t))

    @property
    def abs2_z(self) -> Fraction:
        return sum((v.abs2() for v in self.z), Fraction(0))


@dataclass(frozen=True)
class ClosedFormSolution:
    """One member of the extremal family; build it with :func:`make_solution`."""

    n: int
    mu: Tuple[GaussianRational, ...]
    lam: GaussianRational
    convention: str = "z"

    @property
    def N(self) -> Fraction:
        """``4 Im λ - |μ|²``, positive for admissible parameters."""
        return 4 * self.lam.im - sum((m.abs2() for m in self.mu), Fraction(0))

    def pairing(self, z: Sequence[GaussianRational]) -> GaussianRational:
        """``⟨μ, z⟩`` as ``Σ μ_α z_α`` (``"z"``) or ``Σ μ_α z̄_α`` (``"zbar"``)."""
        total = GaussianRational(0)
        for m, v in zip(self.mu, z):
            total = total + m * (v if self.convention == "z" else v.conjugate())
        return total

    def with_convention(self, convention: str) -> "ClosedFormSolution":
        return make_solution(self.n, self.mu, self.lam, convention)

    def to_params(self) -> Dict[str, str]:
        params = {"n": str(self.n)}
        for a, m in enumerate(self.mu, start=1):
            params[f"mu{a}_re"] = str(m.re)
            params[f"mu{a}_im"] = str(m.im)
        params["lambda_re"] = str(self.lam.re)
        params["lambda_im"] = str(self.lam.im)
        params["convention"] = self.convention
        return params

    # vectorized floating evaluation, used by the quadrature layer

    def w_array(self, z: np.ndarray, t: np.ndarray) -> np.ndarray:
        """``w`` at points given as ``z`` of shape ``(N, n)`` and ``t`` of shape ``(N,)``."""
        mu = np.array([complex(m) for m in self.mu])
        paired = z if self.convention == "z" else np.conj(z)
        return t + 1j * np.sum(np.abs(z) ** 2, axis=1) + paired @ mu + complex(self.lam)

    def u_array(self, z: np.ndarray, t: np.ndarray) -> np.ndarray:
        return float(self.N) ** (self.n / 2) / np.abs(self.w_array(z, t)) ** self.n

    def grad2_array(self, z: np.ndarray, t: np.ndarray) -> np.ndarray:
        """``|∂f|² = Σ |f_α|²`` with ``f_α = -(Z_α w · w̄ + w · Z_α w̄) / (2|w|²)``."""
        w = self.w_array(z, t)
        mu = np.array([complex(m) for m in self.mu])
        z_w = 2j * np.conj(z)
        z_w_bar = np.zeros_like(z)
        if self.convention == "z":
            z_w = z_w + mu
        else:
            z_w_bar = z_w_bar + np.conj(mu)
        numerator = z_w * np.conj(w)[:, None] + w[:, None] * z_w_bar
        f_alpha = -numerator / (2 * np.abs(w)[:, None] ** 2)
        return np.sum(np.abs(f_alpha) ** 2, axis=1)

    def e2f_array(self, z: np.ndarray, t: np.ndarray) -> np.ndarray:
        return float(self.N) / (4 * np.abs(self.w_array(z, t)) ** 2)


def make_solution(
    n: int,
    mu: Sequence[Union[GaussianRational, int, Fraction]],
    lam: Union[GaussianRational, int, Fraction],
    convention: str = "z",
) -> ClosedFormSolution:
    """Validate parameters of the extremal family.

    Raises:
        ParameterError: If ``n < 1``, ``μ`` has the wrong length, the
            convention is unknown, or ``|μ|² ≥ 4 Im λ``.
    """
    if n < 1:
        raise ParameterError("n must be a positive integer")
    if len(mu) != n:
        raise ParameterError(f"mu has {len(mu)} components, expected {n}")
    if convention not in CONVENTIONS:
        raise ParameterError(f"Unknown convention {convention!r}; use 'z' or 'zbar'")
    sol = ClosedFormSolution(
        n, tuple(GaussianRational.coerce(m) for m in mu), GaussianRational.coerce(lam), convention
    )
    if sol.N <= 0:
        raise ParameterError(f"|mu|^2 < 4 Im(lambda) is violated: 4 Im(lambda) - |mu|^2 = {sol.N}")
    return sol


def eval_w(sol: ClosedFormSolution, p: HPoint) -> GaussianRational:
    """``w = t + i|z|² + ⟨μ,z⟩ + λ``."""
    return GaussianRational(p.t, p.abs2_z) + sol.pairing(p.z) + sol.lam


def eval_u_squared(sol: ClosedFormSolution, p: HPoint) -> Fraction:
    """``u² = N^n / |w|^{2n}``.

    Raises:
        ExactDivisionError: If ``w`` vanishes at ``p``.
    """
    w2 = eval_w(sol, p).abs2()
    if w2 == 0:
        raise ExactDivisionError(f"w vanishes at {p}")
    return sol.N**sol.n / w2**sol.n


def eval_u(sol: ClosedFormSolution, p: HPoint) -> float:
    return float(eval_u_squared(sol, p)) ** 0.5


def e2f(sol: ClosedFormSolution, p: HPoint) -> Fraction:
    """``e^{2f} = u^{2/n} / 4 = N / (4|w|²)``."""
    w2 = eval_w(sol, p).abs2()
    if w2 == 0:
        raise ExactDivisionError(f"w vanishes at {p}")
    return sol.N / (4 * w2)


def w_series(sol: ClosedFormSolution, coords: CoordinateSeries) -> Taylor:
    i = coords.t.imag_unit
    w = coords.t + coords.abs2_z() * i + coords.t.coerce(sol.lam)
    for a, m in enumerate(sol.mu, start=1):
        paired = coords.z(a) if sol.convention == "z" else coords.z_bar(a)
        w = w + paired * coords.t.coerce(m)
    return w


def f_series(sol: ClosedFormSolution, coords: CoordinateSeries) -> Taylor:
    """``f = ½ ln N - ½ ln |w|² - ln 2``; exact series omit the constant."""
    w = w_series(sol, coords)
    log_w2 = (w * w.conjugate()).log(drop_constant=coords.exact)
    f = log_w2 * Fraction(-1, 2)
    if not coords.exact:
        f = f + (0.5 * np.log(float(sol.N)) - np.log(2.0))
    return f


def jets_at(sol: ClosedFormSolution, p: HPoint, max_length: int = 2) -> CRJets:
    """Exact canonical CR jets of ``f`` up to ``max_length``; ``value`` is left unset."""
    if len(p.z) != sol.n:
        raise ParameterError(f"point has {len(p.z)} complex coordinates, expected {sol.n}")
    coords = CoordinateSeries(p.z, p.t, max_length, exact=True)
    jets = cr_jets(f_series(sol, coords), coords, max_length)
    jets.value = None
    jets.e2f = GaussianRational(e2f(sol, p))
    return jets


def exact_residual(
    sol: ClosedFormSolution, p: HPoint, e2f_coefficient: Optional[int] = None
) -> GaussianRational:
    """``Δ_b f - n|∂f|² - n e^{2f}`` at ``p``, exactly.

    Args:
        sol: Member of the family.
        p: Exact point.
        e2f_coefficient: Replace the coefficient ``n`` of ``e^{2f}`` (mutation runs).
    """
    return cast(GaussianRational, yamabe_residual(jets_at(sol, p), e2f_coefficient))


def tensors_at(sol: ClosedFormSolution, p: HPoint) -> CRTensors:
    """Exact ``D_{αβ}``, ``E_{αβ̄}`` and ``G_α`` at ``p``."""
    return cr_tensors(jets_at(sol, p))


# parameter files


def load_solution(path: Union[str, Path]) -> ClosedFormSolution:
    """Read a ``key = value`` parameter file.

    Raises:
        ParameterError: If the file is missing, a key is absent or a value is not
            an exact rational.
    """
    path = Path(path)
    if not path.is_file():
        raise ParameterError(f"Parameter file {path} does not exist")
    return solution_from_params(dotenv_values(path))


def solution_from_params(values: Dict[str, Optional[str]]) -> ClosedFormSolution:
    def read(key: str, default: Optional[str] = None) -> Fraction:
        raw = values.get(key)
        if raw is None or raw == "":
            if default is None:
                raise ParameterError(f"Missing parameter {key!r}")
            raw = default
        try:
            return to_fraction(raw.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ParameterError(f"Parameter {key!r} is not a rational: {raw!r}") from e

    n_value = read("n")
    if n_value.denominator != 1:
        raise ParameterError("n must be an integer")
    n = int(n_value)
    if n < 1:
        raise ParameterError("n must be a positive integer")
    mu = [GaussianRational(read(f"mu{a}_re", "0"), read(f"mu{a}_im", "0")) for a in range(1, n + 1)]
    lam = GaussianRational(read("lambda_re", "0"), read("lambda_im"))
    convention = (values.get("convention") or "z").strip()
    return make_solution(n, mu, lam, convention)


def save_solution(sol: ClosedFormSolution, path: Union[str, Path]) -> None:
    lines = ["# extremal family parameters"] + [f"{k} = {v}" for k, v in sol.to_params().items()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


# random instances


def random_rational(rng: np.random.Generator, bound: int = 9, denominator: int = 5) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, denominator + 1)))


def random_solution(
    rng: np.random.Generator, n: int, convention: str = "z", nonzero_mu: bool = False
) -> ClosedFormSolution:
    """Admissible random parameters: ``Im λ = (|μ|² + ε)/4`` with rational ``ε > 0``."""
    while True:
        mu = [GaussianRational(random_rational(rng, 3), random_rational(rng, 3)) for _ in range(n)]
        if not nonzero_mu or any(mu):
            break
    slack = Fraction(int(rng.integers(1, 20)), int(rng.integers(1, 5)))
    mu_norm = sum((m.abs2() for m in mu), Fraction(0))
    lam = GaussianRational(random_rational(rng), (mu_norm + slack) / 4)
    return make_solution(n, mu, lam, convention)


def random_point(rng: np.random.Generator, n: int) -> HPoint:
    z = [GaussianRational(random_rational(rng), random_rational(rng)) for _ in range(n)]
    return HPoint.of(z, random_rational(rng))


@dataclass
class ConventionFinding:
    """Which pairing convention makes the residual vanish on random instances."""

    convention: Optional[str]
    zero_residuals: Dict[str, int]
    trials: int

    def describe(self) -> str:
        counts = ", ".join(f"{k}: {v}/{self.trials}" for k, v in self.zero_residuals.items())
        if self.convention is None:
            return f"no single pairing convention gives zero residuals ({counts})"
        pairing = "sum mu_a z_a" if self.convention == "z" else "sum mu_a conj(z_a)"
        return f"<mu,z> = {pairing} gives zero residuals ({counts})"


def determine_convention(
    n: int = 2, solutions: int = 5, points: int = 4, seed: int = 0
) -> ConventionFinding:
    """Run the exact residual under both conventions on random instances with ``μ ≠ 0``."""
    rng = np.random.default_rng(seed)
    cases: List[Tuple[ClosedFormSolution, HPoint]] = []
    for _ in range(solutions):
        sol = random_solution(rng, n, nonzero_mu=True)
        cases.extend((sol, random_point(rng, n)) for _ in range(points))
    zeros = {}
    for convention in CONVENTIONS:
        zeros[convention] = sum(
            1 for sol, p in cases if exact_residual(sol.with_convention(convention), p).is_zero()
        )
    winners = [c for c in CONVENTIONS if zeros[c] == len(cases)]
    return ConventionFinding(winners[0] if len(winners) == 1 else None, zeros, len(cases))
