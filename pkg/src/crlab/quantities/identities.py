"""Catalog of pointwise identities and the driver that normalizes ``LHS - RHS``."""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from crlab.algebra.gaussian import GaussianRational
from crlab.algebra.params import ParamPoly
from crlab.algebra.polynomial import Polynomial
from crlab.jets.context import E_F, ETA, H, CRContext
from crlab.jets.words import T, JetOrderError, anti
from crlab.models import VerificationReport
from crlab.quantities.catalog import QuantityCatalog
from crlab.quantities.forms import (
    COEFFICIENT_MUTATIONS,
    PsiForms,
    divergence_coefficients,
)
from crlab.quantities.fractions import TrackedFraction
from crlab.quantities.free import FreeQuadraticAlgebra

Side = Union[Polynomial, TrackedFraction]
Component = Tuple[str, Side, Side]

_I = GaussianRational(0, 1)

DROP_MUTATIONS = tuple(f"drop-{k}" for k in range(1, 7))

C5_NOTE = (
    "c5 takes its imaginary part with a minus sign; "
    "the opposite sign is the 'c5-printed' mutation and does not verify"
)


class IdentityId(str, Enum):
    """Stable names of the verifiable identities."""

    LEMMA1 = "lemma1"
    JL = "jl"
    WEIGHT_DERIVATIVE = "weight-derivative"
    PSI_SQUARES = "psi-squares"
    G_DERIVATIVE = "g-derivative"
    LEM3_DIV = "lem3-div"
    LEM4_DIV = "lem4-div"
    LEM5_DIV = "lem5-div"
    LEMMA1_PSI = "lemma1-psi"
    PSI_EXPANDED = "psi-expanded"
    F0_BAR = "f0-bar-derivative"
    LEM4_AUX = "lem4-aux"
    TRACE_FREE = "trace-free"


FREE_IDENTITIES = frozenset({IdentityId.PSI_SQUARES, IdentityId.PSI_EXPANDED})

MUTATIONS: Dict[IdentityId, Tuple[str, ...]] = {
    IdentityId.LEMMA1: COEFFICIENT_MUTATIONS + DROP_MUTATIONS,
    IdentityId.PSI_SQUARES: COEFFICIENT_MUTATIONS,
}


@dataclass
class IdentityCase:
    """The components of one identity plus the reduction that decides zero."""

    components: List[Component]
    reduce: Callable[[Polynomial], Polynomial]
    note: Optional[str] = None


@lru_cache(maxsize=8)
def context_for(n: int, m: Optional[Fraction] = None) -> CRContext:
    """A shared, read-only context per ``(n, m)``."""
    return CRContext(n, m)


def _coefficient_mutation(mutation: Optional[str]) -> Optional[str]:
    return mutation if mutation in COEFFICIENT_MUTATIONS else None


# -- jet identities ------------------------------------------------------------


def _lemma1_lhs(cat: QuantityCatalog) -> Polynomial:
    return cat.ctx.divergence_real([cat.weight * v for v in cat.divergence_field()])


def _lemma1(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    cat = QuantityCatalog(ctx, _coefficient_mutation(mutation))
    factors = cat.quadratic_data.denominator_factors()
    terms: List[Side] = [
        TrackedFraction(ctx.e2f * cat.tensor_norms(), factors),
        TrackedFraction(cat.mixed_norm(), factors),
        TrackedFraction(-cat.vector_norm("D", "E"), factors),
        *cat.psi.square_terms(cat.coefficients),
    ]
    if mutation in DROP_MUTATIONS:
        del terms[DROP_MUTATIONS.index(mutation)]
    rhs = TrackedFraction(ctx.zero(), factors)
    for term in terms:
        rhs = rhs + term
    return IdentityCase(
        [("lemma1", _lemma1_lhs(cat), rhs * cat.weight)], ctx.reduce, note=C5_NOTE
    )


def _lemma1_psi(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    cat = QuantityCatalog(ctx)
    rhs = cat.weight * (
        ctx.e2f * cat.tensor_norms()
        + cat.mixed_norm()
        - cat.vector_norm("D", "E")
        + cat.psi.first_form()
    )
    return IdentityCase([("lemma1-psi", _lemma1_lhs(cat), rhs)], ctx.reduce)


def _jl(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    cat = QuantityCatalog(ctx)
    lhs = ctx.divergence_real([cat.jl_weight * v for v in cat.divergence_field()])
    rhs = cat.jl_weight * (
        ctx.e2f * cat.tensor_norms()
        + cat.vector_norm("G")
        + cat.vector_norm("G", "D")
        + cat.psi.norm2({"G": 1, "E": -1})
        + cat.mixed_norm()
    )
    return IdentityCase([("jl", lhs, rhs)], ctx.reduce)


def _weight_derivative(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    cat = QuantityCatalog(ctx)
    weight = ctx.weight(E_F, ctx.exponent(0, m=1))
    weight = weight * ctx.weight(H, ctx.exponent(0, m=Fraction(-1, 2)))
    components: List[Component] = []
    for a, d_bar, e_bar, g_bar in zip(ctx.alphas, cat.D_vec_bar, cat.E_vec_bar, cat.G_vec_bar):
        lhs = ctx.apply_derivation(weight, anti(a))
        inner = ctx.s * (d_bar + e_bar) + ctx.f0 * g_bar * _I
        rhs = weight * ctx.weight(H, -1) * inner * (-ctx.m)
        components.append((f"alpha={a}", lhs, rhs))
    return IdentityCase(components, ctx.reduce)


def _g_derivative(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    cat = QuantityCatalog(ctx)
    components: List[Component] = []
    for a, d_bar, e_bar, g_bar in zip(ctx.alphas, cat.D_vec_bar, cat.E_vec_bar, cat.G_vec_bar):
        f_abar = ctx.jet("f", anti(a))
        components.append(
            (f"g,alpha={a}", ctx.apply_derivation(cat.g, anti(a)), d_bar + e_bar + g_bar)
        )
        components.append(
            (
                f"g_bar,alpha={a}",
                ctx.apply_derivation(cat.g_bar, anti(a)),
                d_bar + e_bar - g_bar + cat.g_bar * f_abar * 2,
            )
        )
    return IdentityCase(components, ctx.reduce)


def _f0_bar(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    cat = QuantityCatalog(ctx)
    components: List[Component] = []
    for a, g_bar in zip(ctx.alphas, cat.G_vec_bar):
        rhs = (g_bar - cat.g_bar * ctx.jet("f", anti(a))) * _I
        components.append((f"alpha={a}", ctx.jet("f", T, anti(a)), rhs))
    return IdentityCase(components, ctx.reduce)


def _lem3(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    cat = QuantityCatalog(ctx)
    w, phi, m = cat.weight, ctx.jet("phi"), ctx.m
    f0, s, h_inv = ctx.f0, ctx.s, ctx.weight(H, -1)
    p1 = ctx.weight(H, 1) - f0 * f0 * m
    lhs = ctx.divergence_imag([w * f0 * ctx.jet("f", a) * phi for a in ctx.alphas])
    scalar = f0 * f0 * ctx.n - ctx.e2f * ctx.grad2 - ctx.grad2 * ctx.grad2
    inner = ctx.add_all(
        w
        * ctx.jet("f", a)
        * (
            h_inv * (p1 * g_bar * _I - f0 * s * (d_bar + e_bar) * m) * phi
            + f0 * ctx.jet("phi", anti(a))
        )
        for a, d_bar, e_bar, g_bar in zip(ctx.alphas, cat.D_vec_bar, cat.E_vec_bar, cat.G_vec_bar)
    )
    rhs = w * scalar * phi + ctx.imag_part(inner)
    return IdentityCase([("lem3-div", lhs, rhs)], ctx.reduce)


def _lem4(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    cat = QuantityCatalog(ctx)
    w, phi, m = cat.weight, ctx.jet("phi"), ctx.m
    f0, grad2, h_inv = ctx.f0, ctx.grad2, ctx.weight(H, -1)
    lhs = ctx.divergence_real([w * grad2 * ctx.jet("f", a) * phi for a in ctx.alphas])
    scalar = grad2 * grad2 * (ctx.n - 1) - ctx.e2f * grad2 * (ctx.n + 1)
    damped = ctx.weight(H, 1) - (ctx.e2f * grad2 + grad2 * grad2) * m
    inner = ctx.add_all(
        w
        * ctx.jet("f", a)
        * (
            h_inv * (damped * (d_bar + e_bar) - grad2 * f0 * g_bar * (m * _I)) * phi
            + grad2 * ctx.jet("phi", anti(a))
        )
        for a, d_bar, e_bar, g_bar in zip(ctx.alphas, cat.D_vec_bar, cat.E_vec_bar, cat.G_vec_bar)
    )
    rhs = w * scalar * phi + ctx.real_part(inner)
    return IdentityCase([("lem4-div", lhs, rhs)], ctx.reduce)


def _lem4_aux(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    cat = QuantityCatalog(ctx)
    f = {a: ctx.jet("f", a) for a in ctx.alphas}
    fb = {a: ctx.jet("f", anti(a)) for a in ctx.alphas}
    pairs = [(a, b) for a in ctx.alphas for b in ctx.alphas]
    anti_anti = ctx.add_all(ctx.jet("f", anti(a), anti(b)) * f[a] * f[b] for a, b in pairs)
    mixed = ctx.add_all(ctx.jet("f", b, anti(a)) * f[a] * fb[b] for a, b in pairs)
    d_side = ctx.add_all(f[a] * cat.D_vec_bar[a - 1] for a in ctx.alphas)
    d_side = d_side + ctx.grad2 * ctx.grad2 * 2
    e_side = ctx.add_all(f[a] * cat.E_vec_bar[a - 1] for a in ctx.alphas) - cat.g * ctx.grad2
    return IdentityCase([("anti-anti", anti_anti, d_side), ("mixed", mixed, e_side)], ctx.reduce)


def _lem5(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    q_weight = ctx.weight(E_F, ctx.exponent(0, q=1))
    eta_theta = ctx.weight(ETA, ctx.exponent(0, theta=1))
    eta_lowered = ctx.weight(ETA, ctx.exponent(-1, theta=1))
    q, theta = ParamPoly.variable("q"), ParamPoly.variable("theta")
    lhs = ctx.divergence_real([q_weight * ctx.jet("f", a) * eta_theta for a in ctx.alphas])
    scalar = ctx.grad2 * (q - ctx.n) - ctx.e2f * ctx.n
    inner = ctx.add_all(ctx.jet("f", a) * ctx.jet("eta", anti(a)) for a in ctx.alphas)
    rhs = q_weight * scalar * eta_theta + ctx.real_part(q_weight * eta_lowered * inner * theta)
    return IdentityCase([("lem5-div", lhs, rhs)], ctx.reduce)


def _trace_free(ctx: CRContext, mutation: Optional[str]) -> IdentityCase:
    cat = QuantityCatalog(ctx)
    components: List[Component] = [
        ("trace", ctx.add_all(cat.einstein[(a, a)] for a in ctx.alphas), ctx.zero())
    ]
    for a in ctx.alphas:
        for b in ctx.alphas:
            if a < b:
                components.append((f"D{a}{b}", cat.torsion[(a, b)], cat.torsion[(b, a)]))
    return IdentityCase(components, ctx.reduce)


# -- free-algebra identities ---------------------------------------------------


def _psi_squares(algebra: FreeQuadraticAlgebra, mutation: Optional[str]) -> IdentityCase:
    data = algebra.data()
    forms = PsiForms(data)
    completed = forms.completed_squares(divergence_coefficients(data, mutation))
    return IdentityCase(
        [("psi-squares", forms.expanded_form(), completed)], algebra.reduce, note=C5_NOTE
    )


def _psi_expanded(algebra: FreeQuadraticAlgebra, mutation: Optional[str]) -> IdentityCase:
    forms = PsiForms(algebra.data())
    return IdentityCase(
        [("psi-expanded", forms.first_form(), forms.expanded_form())], algebra.reduce
    )


JET_BUILDERS: Dict[IdentityId, Callable[[CRContext, Optional[str]], IdentityCase]] = {
    IdentityId.LEMMA1: _lemma1,
    IdentityId.JL: _jl,
    IdentityId.WEIGHT_DERIVATIVE: _weight_derivative,
    IdentityId.G_DERIVATIVE: _g_derivative,
    IdentityId.LEM3_DIV: _lem3,
    IdentityId.LEM4_DIV: _lem4,
    IdentityId.LEM5_DIV: _lem5,
    IdentityId.LEMMA1_PSI: _lemma1_psi,
    IdentityId.F0_BAR: _f0_bar,
    IdentityId.LEM4_AUX: _lem4_aux,
    IdentityId.TRACE_FREE: _trace_free,
}

FREE_BUILDERS: Dict[IdentityId, Callable[[FreeQuadraticAlgebra, Optional[str]], IdentityCase]] = {
    IdentityId.PSI_SQUARES: _psi_squares,
    IdentityId.PSI_EXPANDED: _psi_expanded,
}


def build_case(
    identity: Union[IdentityId, str],
    n: int,
    m: Optional[Union[int, Fraction]] = None,
    mutation: Optional[str] = None,
) -> IdentityCase:
    """Build the components of ``identity``.

    Raises:
        ValueError: For an unknown identity or a mutation it does not support.
    """
    identity = IdentityId(identity)
    if mutation is not None and mutation not in MUTATIONS.get(identity, ()):
        raise ValueError(f"identity {identity.value!r} has no mutation {mutation!r}")
    m_value = None if m is None else Fraction(m)
    if identity in FREE_BUILDERS:
        return FREE_BUILDERS[identity](FreeQuadraticAlgebra(n, m_value), mutation)
    return JET_BUILDERS[identity](context_for(n, m_value), mutation)


def _difference(lhs: Side, rhs: Side) -> Polynomial:
    if isinstance(lhs, Polynomial) and isinstance(rhs, Polynomial):
        return lhs - rhs
    if isinstance(lhs, TrackedFraction):
        return (lhs - rhs).numerator
    assert isinstance(rhs, TrackedFraction)
    return (TrackedFraction(lhs, rhs.factors) - rhs).numerator


def _term_count(side: Side) -> int:
    return len(side.numerator if isinstance(side, TrackedFraction) else side)


def residual(case: IdentityCase) -> List[Tuple[str, Polynomial]]:
    """Reduced numerators of ``LHS - RHS`` per component (denominators multiplied through)."""
    return [(label, case.reduce(_difference(lhs, rhs))) for label, lhs, rhs in case.components]


def verify_identity(
    identity: Union[IdentityId, str],
    n: int,
    m: Optional[Union[int, Fraction]] = None,
    mutation: Optional[str] = None,
    record_timing: bool = False,
) -> VerificationReport:
    """Normalize ``LHS - RHS`` and report whether it vanishes.

    Args:
        identity: Identity id or its stable name.
        n: Complex dimension (vector length for the free-algebra identities).
        m: Rational value of ``m``; ``None`` keeps it formal.
        mutation: Optional perturbation that should make the identity fail.
        record_timing: Store wall time in ``elapsed``.

    Returns:
        A report whose status is ``zero``, ``nonzero`` (with the smallest
        surviving term as witness) or ``error`` (jet order overflow).
    """
    identity = IdentityId(identity)
    mode = "formal" if m is None else f"m={Fraction(m)}"
    report = VerificationReport(
        identity=identity.value, n=n, mode=mode, status="zero", mutation=mutation
    )
    start = time.perf_counter()
    try:
        case = build_case(identity, n, m, mutation)
        report.note = case.note
        report.lhs_terms = sum(_term_count(lhs) for _, lhs, _ in case.components)
        report.rhs_terms = sum(_term_count(rhs) for _, _, rhs in case.components)
        for label, remainder in residual(case):
            report.residual_terms += len(remainder)
            if remainder.is_zero() or report.status == "nonzero":
                continue
            report.status = "nonzero"
            monomial, coefficient = remainder.leading_term()  # type: ignore[misc]
            report.witness = f"{label}: {remainder.term_str(monomial, coefficient)}"
    except JetOrderError as e:
        report.status = "error"
        report.witness = str(e)
    if record_timing:
        report.elapsed = round(time.perf_counter() - start, 3)
    return report


VerifyArgs = Tuple[str, int, Optional[Fraction], Optional[str], bool]


def _verify_args(args: VerifyArgs) -> VerificationReport:
    return verify_identity(*args)


def verify_many(
    identities: Sequence[Union[IdentityId, str]],
    n: int,
    m: Optional[Union[int, Fraction]] = None,
    workers: int = 1,
    record_timing: bool = False,
) -> List[VerificationReport]:
    """Verify several identities, in parallel when ``workers > 1``; results keep the input order."""
    m_value = None if m is None else Fraction(m)
    jobs = [(IdentityId(i).value, n, m_value, None, record_timing) for i in identities]
    if workers <= 1 or len(jobs) <= 1:
        return [_verify_args(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_verify_args, jobs))
