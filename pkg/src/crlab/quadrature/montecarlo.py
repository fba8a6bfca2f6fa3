"""Monte Carlo integration over Korányi balls and dyadic shells."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from crlab.models import QuadratureEstimate
from crlab.quadrature.geometry import KoranyiBall, gauge

Integrand = Callable[[np.ndarray, np.ndarray], np.ndarray]

BATCH = 1 << 16


class NonFiniteSampleError(ValueError):
    """An integrand returned NaN or ±inf; ``point`` is the offending ``(z, t)``."""

    def __init__(self, message: str, point: Sequence[complex]) -> None:
        super().__init__(f"{message} at {list(point)}")
        self.point = list(point)


@dataclass
class BallSample:
    """Points kept from one stream, with the acceptance counts of its box draws."""

    z: np.ndarray
    t: np.ndarray
    drawn: int
    accepted: int

    @property
    def acceptance(self) -> float:
        return self.accepted / self.drawn if self.drawn else 0.0


def _draw(
    rng: np.random.Generator, ball: KoranyiBall, inner_radius: float, count: int
) -> BallSample:
    n, R = ball.n, ball.radius
    zs: List[np.ndarray] = []
    ts: List[np.ndarray] = []
    accepted = drawn = 0
    while accepted < count:
        size = max(BATCH, count - accepted)
        parts = rng.uniform(-R, R, size=(size, 2 * n))
        z = parts[:, :n] + 1j * parts[:, n:]
        t = rng.uniform(-R * R, R * R, size=size)
        rho = gauge(z, t)
        keep = (rho < R) & (rho >= inner_radius)
        drawn += size
        zs.append(z[keep])
        ts.append(t[keep])
        accepted += int(np.count_nonzero(keep))
    return BallSample(np.concatenate(zs)[:count], np.concatenate(ts)[:count], drawn, accepted)


def _stream_sizes(samples: int, workers: int) -> List[int]:
    base, extra = divmod(samples, workers)
    return [base + (1 if k < extra else 0) for k in range(workers)]


def sample_ball(
    ball: KoranyiBall,
    samples: int,
    seed: int,
    workers: int = 1,
    inner_radius: float = 0.0,
) -> List[BallSample]:
    """Uniform points in ``B_R`` (minus ``B_{inner_radius}``) by rejection from a box.

    One independent stream per worker is spawned from ``seed``; the streams
    are returned in order, so results depend only on ``(seed, workers)``.

    Raises:
        ValueError: If ``samples`` or ``workers`` is not positive, or the inner
            radius does not lie in ``[0, R)``.
    """
    if samples < 1 or workers < 1:
        raise ValueError("samples and workers must be positive")
    if not 0 <= inner_radius < ball.radius:
        raise ValueError("inner radius must lie in [0, R)")
    seeds = np.random.SeedSequence(seed).spawn(workers)
    sizes = _stream_sizes(samples, workers)
    return [
        _draw(np.random.default_rng(s), ball, inner_radius, size) for s, size in zip(seeds, sizes)
    ]


def _evaluate(integrand: Integrand, stream: BallSample) -> np.ndarray:
    values = np.asarray(integrand(stream.z, stream.t), dtype=float)
    bad = ~np.isfinite(values)
    if bad.any():
        k = int(np.argmax(bad))
        point = list(stream.z[k]) + [complex(stream.t[k])]
        raise NonFiniteSampleError(f"integrand value {values[k]}", point)
    return values


def integrate(
    integrand: Integrand,
    ball: KoranyiBall,
    samples: int,
    seed: int = 0,
    workers: int = 1,
    excluded_radius: Optional[float] = None,
) -> QuadratureEstimate:
    """Monte Carlo estimate of ``∫_{B_R} integrand``.

    Args:
        integrand: Vectorized function of ``z`` (shape ``(N, n)``) and ``t``.
        ball: Integration domain.
        samples: Total number of accepted points.
        seed: Root seed of the sample streams.
        workers: Number of independent streams, evaluated in threads.
        excluded_radius: Remove ``B_ε`` around the origin for integrands
            singular there.

    Returns:
        Box volume times acceptance rate times the sample mean. The standard
        error combines the binomial error of the acceptance rate with the
        sample variance of the integrand.

    Raises:
        NonFiniteSampleError: If the integrand is not finite at a sample point.
    """
    inner = excluded_radius or 0.0
    streams = sample_ball(ball, samples, seed, workers, inner)
    if workers == 1:
        chunks = [_evaluate(integrand, streams[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            chunks = list(executor.map(lambda s: _evaluate(integrand, s), streams))
    values = np.concatenate(chunks)
    count = len(values)
    mean = math.fsum(values) / count
    variance = math.fsum((values - mean) ** 2) / max(count - 1, 1)
    drawn = sum(s.drawn for s in streams)
    acceptance = sum(s.accepted for s in streams) / drawn
    box = ball.box_volume()
    acceptance_variance = acceptance * (1 - acceptance) / drawn
    return QuadratureEstimate(
        radius=ball.radius,
        value=box * acceptance * mean,
        stderr=box * math.sqrt(acceptance**2 * variance / count + mean**2 * acceptance_variance),
        samples=count,
        seed=seed,
        workers=workers,
        excluded_radius=excluded_radius,
    )


def integrate_shells(
    integrand: Integrand,
    n: int,
    radii: Sequence[float],
    samples: int,
    seed: int = 0,
    workers: int = 1,
    excluded_radius: Optional[float] = None,
    show_progress: bool = False,
) -> List[QuadratureEstimate]:
    """Cumulative integrals over ``B_{R_k}`` built from the shells ``B_{R_k} \\ B_{R_{k-1}}``.

    The innermost ball and each shell get ``samples`` points of their own and a
    seed derived from ``seed`` and the shell index, so peaked integrands near the
    origin are resolved at every scale.

    Raises:
        ValueError: If the radii are not strictly increasing.
    """
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    shell_seeds = np.random.SeedSequence(seed).generate_state(len(radii))
    total = 0.0
    variance = 0.0
    estimates: List[QuadratureEstimate] = []
    inner = excluded_radius or 0.0
    for k, radius in enumerate(tqdm(radii, desc="shells", disable=not show_progress)):
        shell = integrate(
            integrand,
            KoranyiBall(n, radius),
            samples,
            int(shell_seeds[k]),
            workers,
            excluded_radius=inner if inner > 0 else None,
        )
        total += shell.value
        variance += shell.stderr**2
        estimates.append(
            QuadratureEstimate(
                radius=radius,
                value=total,
                stderr=math.sqrt(variance),
                samples=shell.samples * (k + 1),
                seed=seed,
                workers=workers,
                excluded_radius=excluded_radius,
            )
        )
        inner = radius
    return estimates
