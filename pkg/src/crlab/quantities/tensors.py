"""Exact tests of the torsion/Einstein contraction chain on random rational tensors."""

from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

import numpy as np
from tqdm import tqdm

from crlab.algebra.gaussian import GaussianRational
from crlab.models import TensorTestReport

Matrix = List[List[GaussianRational]]

_ZERO = GaussianRational(0)


class ChainValues(NamedTuple):
    """``|D f̄ + E f|²`` computed directly and by expansion, with the bound ``|D_α + E_α|²``."""

    direct: Fraction
    expanded: Fraction
    lower: Fraction


def contract(
    D: Matrix, E: Matrix, f: List[GaussianRational]
) -> Tuple[List[GaussianRational], List[GaussianRational]]:
    """``D_α = D_{αβ} f_β̄`` and ``E_α = E_{αβ̄} f_β``."""
    n = len(f)
    d_vec = [sum((D[a][b] * f[b].conjugate() for b in range(n)), _ZERO) for a in range(n)]
    e_vec = [sum((E[a][b] * f[b] for b in range(n)), _ZERO) for a in range(n)]
    return d_vec, e_vec


def chain_values(D: Matrix, E: Matrix, f: List[GaussianRational]) -> ChainValues:
    n = len(f)
    direct = Fraction(0)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                x = D[a][b] * f[c].conjugate() + E[a][c] * f[b]
                direct += x.abs2()
    f_norm = sum((v.abs2() for v in f), Fraction(0))
    d_norm = sum((D[a][b].abs2() for a in range(n) for b in range(n)), Fraction(0))
    e_norm = sum((E[a][b].abs2() for a in range(n) for b in range(n)), Fraction(0))
    d_vec, e_vec = contract(D, E, f)
    cross = sum((d * e.conjugate() + e * d.conjugate() for d, e in zip(d_vec, e_vec)), _ZERO)
    expanded = d_norm * f_norm + cross.re + e_norm * f_norm
    lower = sum(((d + e).abs2() for d, e in zip(d_vec, e_vec)), Fraction(0))
    return ChainValues(direct, expanded, lower)


def _rational(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6)))


def _complex(rng: np.random.Generator) -> GaussianRational:
    return GaussianRational(_rational(rng), _rational(rng))


def random_sample(
    rng: np.random.Generator, n: int
) -> Tuple[Matrix, Matrix, List[GaussianRational]]:
    """Complex symmetric ``D``, Hermitian ``E`` and a vector ``f``."""
    D: Matrix = [[_ZERO] * n for _ in range(n)]
    E: Matrix = [[_ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            D[a][b] = D[b][a] = _complex(rng)
            if a == b:
                E[a][a] = GaussianRational(_rational(rng))
            else:
                E[a][b] = _complex(rng)
                E[b][a] = E[a][b].conjugate()
    return D, E, [_complex(rng) for _ in range(n)]


def tensor_identity_tests(
    n: int = 2, samples: int = 10_000, seed: int = 0, show_progress: bool = False
) -> TensorTestReport:
    """Check the expansion and the lower bound on random samples.

    Raises:
        ValueError: If ``samples`` or ``n`` is not positive.
    """
    if samples < 1 or n < 1:
        raise ValueError("n and samples must be positive")
    rng = np.random.default_rng(seed)
    report = TensorTestReport(n=n, samples=samples, seed=seed)
    for index in tqdm(range(samples), desc=f"tensors n={n}", disable=not show_progress):
        D, E, f = random_sample(rng, n)
        values = chain_values(D, E, f)
        failure: Dict[str, str] = {}
        if values.direct != values.expanded:
            report.equality_failures += 1
            failure["equality"] = f"{values.direct} != {values.expanded}"
        if values.direct < values.lower:
            report.inequality_failures += 1
            failure["inequality"] = f"{values.direct} < {values.lower}"
        if failure and report.first_failure is None:
            details = "; ".join(f"{k}: {v}" for k, v in failure.items())
            report.first_failure = f"sample {index}: {details}"
    return report
