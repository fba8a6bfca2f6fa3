"""Truncated Taylor arithmetic, CR jets in real coordinates and numeric residuals."""

from crlab.numeric.taylor import Taylor, multi_indices
from crlab.numeric.cr import (
    CoordinateSeries,
    CRJets,
    CRTensors,
    apply_letter,
    cr_jets,
    cr_tensors,
    sublaplacian,
    yamabe_residual,
)
from crlab.numeric.evaluate import (
    DomainViolationError,
    NumericResidual,
    TaylorValue3,
    cr_jets_from_taylor,
    fd_crosscheck,
    jet_table,
    numeric_residual,
    taylor_eval,
)

__all__ = [
    "CRJets",
    "CRTensors",
    "CoordinateSeries",
    "DomainViolationError",
    "NumericResidual",
    "Taylor",
    "TaylorValue3",
    "apply_letter",
    "cr_jets",
    "cr_jets_from_taylor",
    "cr_tensors",
    "fd_crosscheck",
    "jet_table",
    "multi_indices",
    "numeric_residual",
    "sublaplacian",
    "taylor_eval",
    "yamabe_residual",
]
