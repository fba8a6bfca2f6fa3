"""Named quantities of the divergence formula, built inside a :class:`CRContext`."""

from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, List, Optional, Tuple, Union

from crlab.algebra.gaussian import GaussianRational
from crlab.algebra.polynomial import Polynomial
from crlab.jets.context import E_F, H, CRContext
from crlab.jets.words import T, anti
from crlab.quantities.forms import PsiForms, QuadraticData, divergence_coefficients
from crlab.quantities.fractions import TrackedFraction

Quantity = Union[
    Polynomial, TrackedFraction, Tuple[Polynomial, ...], Dict[Tuple[int, int], Polynomial]
]

_I = GaussianRational(0, 1)


class UnknownQuantityError(KeyError):
    """Raised for a quantity name the catalog does not define."""


class QuantityCatalog:
    """Lazily built torsion, Einstein and related quantities for one context.

    Tensor families are dicts keyed by ``(α, β)``; vector families are tuples
    indexed by ``α - 1``. Everything is normalized modulo the trace equation.

    Args:
        ctx: The jet context.
        mutation: Coefficient mutation forwarded to :func:`divergence_coefficients`.
    """

    NAMES = (
        "g", "g_bar", "grad2", "h", "s", "f0", "W",
        "D", "E", "D_vec", "E_vec", "G_vec",
        "c1", "c2", "c3", "c4", "c5", "c6",
        "psi", "psi_expanded", "A_f",
    )  # fmt: skip

    def __init__(self, ctx: CRContext, mutation: Optional[str] = None) -> None:
        self.ctx = ctx
        self.mutation = mutation

    # -- scalars ----------------------------------------------------------------

    @property
    def g(self) -> Polynomial:
        return self.ctx.g

    @property
    def g_bar(self) -> Polynomial:
        return self.ctx.s + self.ctx.f0 * _I

    @cached_property
    def weight(self) -> Polynomial:
        """``W = e^{(2n+m-2)f} h^{-m/2}``."""
        ctx = self.ctx
        return ctx.weight(E_F, ctx.exponent(2 * ctx.n - 2, m=1)) * ctx.weight(
            H, ctx.exponent(0, m=Fraction(-1, 2))
        )

    @cached_property
    def jl_weight(self) -> Polynomial:
        """``e^{2(n-1)f}``, the weight at ``m = 0``."""
        return self.ctx.weight(E_F, 2 * self.ctx.n - 2)

    # -- tensors ----------------------------------------------------------------

    @cached_property
    def torsion(self) -> Dict[Tuple[int, int], Polynomial]:
        """``D_{αβ} = f_{αβ} - 2 f_α f_β``."""
        ctx = self.ctx
        return {
            (a, b): ctx.jet("f", a, b) - ctx.jet("f", a) * ctx.jet("f", b) * 2
            for a in ctx.alphas
            for b in ctx.alphas
        }

    @cached_property
    def einstein(self) -> Dict[Tuple[int, int], Polynomial]:
        """``E_{αβ̄} = f_{αβ̄} - (1/n) f_{γγ̄} δ_{αβ}``."""
        ctx = self.ctx
        trace = ctx.add_all(ctx.jet("f", c, anti(c)) for c in ctx.alphas) * Fraction(1, ctx.n)
        result = {}
        for a in ctx.alphas:
            for b in ctx.alphas:
                value = ctx.jet("f", a, anti(b))
                result[(a, b)] = value - trace if a == b else value
        return result

    @cached_property
    def torsion_bar(self) -> Dict[Tuple[int, int], Polynomial]:
        return {key: self.ctx.conjugate(value) for key, value in self.torsion.items()}

    @cached_property
    def einstein_bar(self) -> Dict[Tuple[int, int], Polynomial]:
        return {key: self.ctx.conjugate(value) for key, value in self.einstein.items()}

    # -- vectors ----------------------------------------------------------------

    @cached_property
    def D_vec(self) -> Tuple[Polynomial, ...]:
        """``D_α = D_{αβ} f_β̄``."""
        ctx = self.ctx
        return tuple(
            ctx.add_all(self.torsion[(a, b)] * ctx.jet("f", anti(b)) for b in ctx.alphas)
            for a in ctx.alphas
        )

    @cached_property
    def E_vec(self) -> Tuple[Polynomial, ...]:
        """``E_α = E_{αβ̄} f_β``."""
        ctx = self.ctx
        return tuple(
            ctx.add_all(self.einstein[(a, b)] * ctx.jet("f", b) for b in ctx.alphas)
            for a in ctx.alphas
        )

    @cached_property
    def G_vec(self) -> Tuple[Polynomial, ...]:
        """``G_α = i f_{0α} + g f_α``."""
        ctx = self.ctx
        return tuple(ctx.jet("f", T, a) * _I + ctx.g * ctx.jet("f", a) for a in ctx.alphas)

    def _bar(self, vector: Tuple[Polynomial, ...]) -> Tuple[Polynomial, ...]:
        return tuple(self.ctx.conjugate(v) for v in vector)

    @cached_property
    def D_vec_bar(self) -> Tuple[Polynomial, ...]:
        return self._bar(self.D_vec)

    @cached_property
    def E_vec_bar(self) -> Tuple[Polynomial, ...]:
        return self._bar(self.E_vec)

    @cached_property
    def G_vec_bar(self) -> Tuple[Polynomial, ...]:
        return self._bar(self.G_vec)

    # -- quadratic forms --------------------------------------------------------

    @cached_property
    def quadratic_data(self) -> QuadraticData:
        ctx = self.ctx
        return QuadraticData(
            table=ctx.table,
            m=ctx.m,
            f0=ctx.f0,
            s=ctx.s,
            h=ctx.weight(H, 1),
            h_inv=ctx.weight(H, -1),
            D=self.D_vec,
            E=self.E_vec,
            G=self.G_vec,
            D_bar=self.D_vec_bar,
            E_bar=self.E_vec_bar,
            G_bar=self.G_vec_bar,
        )

    @cached_property
    def psi(self) -> PsiForms:
        return PsiForms(self.quadratic_data)

    @cached_property
    def coefficients(self) -> Dict[str, TrackedFraction]:
        return divergence_coefficients(self.quadratic_data, self.mutation)

    def tensor_norms(self) -> Polynomial:
        """``|D_{αβ}|² + |E_{αβ̄}|²``."""
        ctx = self.ctx
        return ctx.add_all(
            [self.torsion[k] * self.torsion_bar[k] for k in self.torsion]
            + [self.einstein[k] * self.einstein_bar[k] for k in self.einstein]
        )

    def mixed_norm(self) -> Polynomial:
        """``|D_{αβ} f_γ̄ + E_{αγ̄} f_β|²`` summed over α, β, γ."""
        ctx = self.ctx
        terms = []
        for a in ctx.alphas:
            for b in ctx.alphas:
                for c in ctx.alphas:
                    x = self.torsion[(a, b)] * ctx.jet("f", anti(c))
                    x = x + self.einstein[(a, c)] * ctx.jet("f", b)
                    x_bar = (
                        self.torsion_bar[(a, b)] * ctx.jet("f", c)
                        + self.einstein_bar[(a, c)] * ctx.jet("f", anti(b))
                    )
                    terms.append(x * x_bar)
        return ctx.add_all(terms)

    def vector_norm(self, *names: str) -> Polynomial:
        """``|Σ X_α|²`` over the named vectors, e.g. ``vector_norm("D", "E")``."""
        return self.psi.norm2({name: 1 for name in names})

    def divergence_field(self) -> Tuple[Polynomial, ...]:
        """``g(D_α + E_α) - i f_0 (D_α - 3E_α + 3G_α)``, the field inside the divergence."""
        ctx = self.ctx
        return tuple(
            ctx.g * (d + e) - ctx.f0 * (d - e * 3 + gv * 3) * _I
            for d, e, gv in zip(self.D_vec, self.E_vec, self.G_vec)
        )

    @cached_property
    def a_f(self) -> Polynomial:
        """``A_f = W(e^{2f}(|D_{αβ}|² + |E_{αβ̄}|²) + |D_α|² + |E_α|² + |G_α|²)``."""
        ctx = self.ctx
        inner = (
            ctx.e2f * self.tensor_norms()
            + self.vector_norm("D")
            + self.vector_norm("E")
            + self.vector_norm("G")
        )
        return self.weight * inner

    # -- lookup -----------------------------------------------------------------

    def get(self, name: str) -> Quantity:
        """Look a quantity up by its catalog name.

        Raises:
            UnknownQuantityError: If ``name`` is not in :attr:`NAMES`.
        """
        ctx = self.ctx
        simple: Dict[str, Callable[[], Quantity]] = {
            "g": lambda: self.g,
            "g_bar": lambda: self.g_bar,
            "grad2": lambda: ctx.grad2,
            "h": lambda: ctx.h_poly,
            "s": lambda: ctx.s,
            "f0": lambda: ctx.f0,
            "W": lambda: self.weight,
            "D": lambda: self.torsion,
            "E": lambda: self.einstein,
            "D_vec": lambda: self.D_vec,
            "E_vec": lambda: self.E_vec,
            "G_vec": lambda: self.G_vec,
            "psi": lambda: self.psi.first_form(),
            "psi_expanded": lambda: self.psi.expanded_form(),
            "A_f": lambda: self.a_f,
        }
        if name in simple:
            return simple[name]()
        if name in self.coefficients:
            return self.coefficients[name]
        raise UnknownQuantityError(f"Unknown quantity {name!r}; known: {', '.join(self.NAMES)}")


def build_quantity(name: str, ctx: CRContext, mutation: Optional[str] = None) -> Quantity:
    """Build one named quantity in ``ctx``."""
    return QuantityCatalog(ctx, mutation).get(name)


def names() -> List[str]:
    return list(QuantityCatalog.NAMES)
