"""Empirical pointwise decay constant of the extremal family."""

import numpy as np

from crlab.closedform.solution import ClosedFormSolution
from crlab.quadrature.geometry import gauge

SHELL_EXPONENTS = range(-4, 10)


def pointwise_decay_check(sol: ClosedFormSolution, samples: int = 10_000, seed: int = 0) -> float:
    """``max u(p) · (|z|² + |t|)^{(n-2)/2}`` over points in dyadic Korányi shells.

    Shells ``2^k ≤ ρ < 2^{k+1}`` run from ``k = -4`` to ``ρ = 2^{10}``; each gets
    ``samples`` random directions dilated to a uniform radius in the shell. The
    origin is never sampled.

    Raises:
        ValueError: If ``samples`` is not positive.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = np.random.default_rng(seed)
    n = sol.n
    best = 0.0
    for k in SHELL_EXPONENTS:
        parts = rng.normal(size=(samples, 2 * n))
        z = parts[:, :n] + 1j * parts[:, n:]
        t = rng.normal(size=samples)
        target = rng.uniform(2.0**k, 2.0 ** (k + 1), size=samples)
        scale = target / gauge(z, t)
        z, t = z * scale[:, None], t * scale**2
        weight = (np.sum(np.abs(z) ** 2, axis=1) + np.abs(t)) ** ((n - 2) / 2)
        best = max(best, float(np.max(sol.u_array(z, t) * weight)))
    return best

