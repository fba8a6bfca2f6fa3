"""Torsion, Einstein and ψ quantities and the identity verification driver."""

from crlab.quantities.bounds import coefficient_bounds_check, coefficients_exact, lower_bounds
from crlab.quantities.catalog import QuantityCatalog, UnknownQuantityError, build_quantity
from crlab.quantities.forms import (
    COEFFICIENT_MUTATIONS,
    PsiForms,
    QuadraticData,
    divergence_coefficients,
)
from crlab.quantities.fractions import TrackedFraction
from crlab.quantities.free import FreeQuadraticAlgebra
from crlab.quantities.identities import (
    DROP_MUTATIONS,
    MUTATIONS,
    IdentityId,
    build_case,
    residual,
    verify_identity,
    verify_many,
)
from crlab.quantities.psi import psd_check_psi, psi_matrix, psi_squares_check
from crlab.quantities.tensors import chain_values, tensor_identity_tests

__all__ = [
    "COEFFICIENT_MUTATIONS",
    "DROP_MUTATIONS",
    "FreeQuadraticAlgebra",
    "IdentityId",
    "MUTATIONS",
    "PsiForms",
    "QuadraticData",
    "QuantityCatalog",
    "TrackedFraction",
    "UnknownQuantityError",
    "build_case",
    "build_quantity",
    "chain_values",
    "coefficient_bounds_check",
    "coefficients_exact",
    "divergence_coefficients",
    "lower_bounds",
    "psd_check_psi",
    "psi_matrix",
    "psi_squares_check",
    "residual",
    "tensor_identity_tests",
    "verify_identity",
    "verify_many",
]
