"""The extremal family: exact evaluation, residuals, tensors and decay."""

from crlab.closedform.checks import solution_check
from crlab.closedform.decay import pointwise_decay_check
from crlab.closedform.solution import (
    CONVENTIONS,
    ClosedFormSolution,
    ConventionFinding,
    HPoint,
    ParameterError,
    determine_convention,
    e2f,
    eval_u,
    eval_u_squared,
    eval_w,
    f_series,
    jets_at,
    load_solution,
    make_solution,
    random_point,
    random_solution,
    exact_residual,
    save_solution,
    solution_from_params,
    tensors_at,
)

__all__ = [
    "CONVENTIONS",
    "ClosedFormSolution",
    "ConventionFinding",
    "HPoint",
    "ParameterError",
    "determine_convention",
    "e2f",
    "eval_u",
    "eval_u_squared",
    "eval_w",
    "f_series",
    "jets_at",
    "load_solution",
    "make_solution",
    "pointwise_decay_check",
    "random_point",
    "random_solution",
    "exact_residual",
    "save_solution",
    "solution_check",
    "solution_from_params",
    "tensors_at",
]
