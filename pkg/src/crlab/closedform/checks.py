"""Exact pointwise checks of one solution, assembled into a report."""

from typing import Optional

import numpy as np
from tqdm import tqdm

from crlab.closedform.decay import pointwise_decay_check
from crlab.closedform.solution import (
    ClosedFormSolution,
    ConventionFinding,
    random_point,
    exact_residual,
    tensors_at,
)
from crlab.models import SolutionCheckReport


def solution_check(
    sol: ClosedFormSolution,
    points: int = 100,
    seed: int = 0,
    decay_samples: int = 10_000,
    finding: Optional[ConventionFinding] = None,
    show_progress: bool = False,
) -> SolutionCheckReport:
    """Residual of the logarithmic equation and ``D, E, G`` at random rational points.

    Every point must give exact zeros. The decay constant is reported for
    ``n ≥ 2`` and never asserted.
    """
    rng = np.random.default_rng(seed)
    report = SolutionCheckReport(
        n=sol.n,
        convention=sol.convention,
        points=points,
        convention_finding=finding.describe() if finding else None,
    )
    for k in tqdm(range(points), desc="points", disable=not show_progress):
        p = random_point(rng, sol.n)
        residual = exact_residual(sol, p)
        if not residual.is_zero():
            report.residual_failures.append(f"point {k} (z={p.z}, t={p.t}): residual {residual}")
        nonzero = tensors_at(sol, p).nonzero()
        if nonzero:
            report.tensor_failures.append(f"point {k} (z={p.z}, t={p.t}): " + ", ".join(nonzero))
    if sol.n >= 2:
        report.decay_constant = pointwise_decay_check(sol, decay_samples, seed)
    return report
