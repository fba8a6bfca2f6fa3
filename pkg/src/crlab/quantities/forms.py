"""The coefficients c1..c6 and the quadratic form ψ in the vectors D_α, E_α, G_α.

Everything here is written against a generic symbol table, so the same code
serves the jet engine (where D_α, E_α, G_α are jet polynomials) and the free
algebra in which they are independent symbols.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from crlab.algebra.gaussian import GaussianRational
from crlab.algebra.params import ParamPoly
from crlab.algebra.polynomial import Polynomial, SymbolTable
from crlab.quantities.fractions import TrackedFraction

Vector = Tuple[Polynomial, ...]

COEFFICIENT_NAMES = ("c1", "c2", "c3", "c4", "c5", "c6")
COEFFICIENT_MUTATIONS = tuple(f"{name}+1" for name in COEFFICIENT_NAMES) + ("c5-printed",)

_I = GaussianRational(0, 1)
_THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class QuadraticData:
    """Scalars and vectors ψ is built from.

    ``h`` and ``h_inv`` are the weight ``h = |g|²`` and its inverse; ``f0``
    and ``s`` are real, with ``h = s² + f0²`` enforced by the caller's
    reduction. Each vector comes with its componentwise conjugate.
    """

    table: SymbolTable
    m: ParamPoly
    f0: Polynomial
    s: Polynomial
    h: Polynomial
    h_inv: Polynomial
    D: Vector
    E: Vector
    G: Vector
    D_bar: Vector
    E_bar: Vector
    G_bar: Vector

    @property
    def g(self) -> Polynomial:
        return self.s - self.f0 * _I

    @property
    def g_bar(self) -> Polynomial:
        return self.s + self.f0 * _I

    def pairing(self, x: Sequence[Polynomial], y_bar: Sequence[Polynomial]) -> Polynomial:
        """``Σ_α x_α ȳ_α``."""
        return Polynomial.sum_of(self.table, (a * b for a, b in zip(x, y_bar)))

    def denominator_factors(self) -> Dict[str, Polynomial]:
        """The two factors every coefficient denominator is built from."""
        f0_sq = self.f0 * self.f0
        return {
            "P1": self.h - f0_sq * self.m,
            "P2": self.h * (5 - self.m * 3) - f0_sq * (self.m * (self.m + 1)),
        }


def _conjugate_coefficient(c: TrackedFraction) -> TrackedFraction:
    # Coefficients are polynomials in the real quantities f0, s, h with complex
    # scalars, so conjugating the scalars conjugates the value.
    return c.map_numerator(lambda p: p.map_coefficients(ParamPoly.conjugate))


def divergence_coefficients(
    data: QuadraticData, mutation: Optional[str] = None
) -> Dict[str, TrackedFraction]:
    """Build c1..c6 with ``√(|g|² - f0²)`` written as ``s``.

    Args:
        data: Scalars of the ambient algebra.
        mutation: ``"cK+1"`` adds one to ``cK``; ``"c5-printed"`` flips the
            sign of the imaginary part of c5.

    Returns:
        Map from coefficient name to its tracked fraction over ``P1`` and ``P2``.
    """
    m, f0, s, h, h_inv = data.m, data.f0, data.s, data.h, data.h_inv
    factors = data.denominator_factors()
    p1 = factors["P1"]
    f0_sq = f0 * f0
    twist = f0 * s * (m * 2 * _I)  # 2m i f0 s

    c5_sign = 1 if mutation == "c5-printed" else -1
    c5_numerator = (
        h * (4 - m * 3)
        - f0_sq * (m * (m + 2))
        + h_inv * f0_sq * f0_sq * (m * m * 2)
        + twist * p1 * h_inv * c5_sign
    )
    coefficients = {
        "c1": TrackedFraction(h_inv * p1 * 3, factors),
        "c2": TrackedFraction.over((p1 - twist) * _THIRD, factors, "P1"),
        "c3": TrackedFraction.over(-(p1 + twist) * _THIRD, factors, "P1"),
        "c4": TrackedFraction.over(
            (p1 * (5 - m * 3) + f0_sq * (m * (1 - m) * 4)) * _THIRD, factors, "P1"
        ),
        "c5": TrackedFraction.over(c5_numerator, factors, "P2"),
        "c6": TrackedFraction.over(h * (3 - m * 2) + f0_sq * (m * (5 - m * 6)), factors, "P2"),
    }
    if mutation is not None and mutation.endswith("+1"):
        name = mutation[:-2]
        if name not in coefficients:
            raise ValueError(f"Unknown coefficient mutation {mutation!r}")
        coefficients[name] = coefficients[name] + 1
    elif mutation is not None and mutation != "c5-printed":
        raise ValueError(f"Unknown coefficient mutation {mutation!r}")
    return coefficients


class PsiForms:
    """The three expressions of ψ over one :class:`QuadraticData`."""

    def __init__(self, data: QuadraticData) -> None:
        self.data = data
        d = data
        vectors = {"D": (d.D, d.D_bar), "E": (d.E, d.E_bar), "G": (d.G, d.G_bar)}
        # products[(X, Y)] = Σ X_α Ȳ_α
        self.products: Dict[Tuple[str, str], Polynomial] = {
            (x, y): d.pairing(vectors[x][0], vectors[y][1]) for x in vectors for y in vectors
        }

    def norm2(self, weights: Dict[str, int]) -> Polynomial:
        """``|Σ_X w_X X|²`` for integer weights on D, E, G."""
        result = Polynomial.zero(self.data.table)
        for x, a in weights.items():
            for y, b in weights.items():
                if a and b:
                    result = result + self.products[(x, y)] * (a * b)
        return result

    def re(self, x: str, y: str) -> Polynomial:
        """``Re Σ X_α Ȳ_α``."""
        return (self.products[(x, y)] + self.products[(y, x)]) * Fraction(1, 2)

    def im(self, x: str, y: str) -> Polynomial:
        """``Im Σ X_α Ȳ_α``."""
        difference = self.products[(x, y)] - self.products[(y, x)]
        return difference * GaussianRational(0, Fraction(-1, 2))

    def first_form(self) -> Polynomial:
        """ψ as it comes out of differentiating the weight, before any regrouping."""
        d = self.data
        table = d.table
        squares = (
            self.norm2({"G": 1})
            + self.norm2({"G": 1, "D": 1})
            + self.norm2({"G": 1, "E": -1})
            + self.norm2({"D": 1, "E": 1})
        )
        n = len(d.D)
        twisted = [d.D[a] - d.E[a] * 3 + d.G[a] * 3 for a in range(n)]
        twisted_bar = [d.D_bar[a] - d.E_bar[a] * 3 + d.G_bar[a] * 3 for a in range(n)]

        # X_α = i f0 (D - 3E + 3G) - g (D + E),  Y_α = s(D̄ + Ē) + i f0 Ḡ
        x = [d.f0 * twisted[a] * _I - d.g * (d.D[a] + d.E[a]) for a in range(n)]
        x_bar = [
            -(d.f0 * twisted_bar[a] * _I) - d.g_bar * (d.D_bar[a] + d.E_bar[a]) for a in range(n)
        ]
        y = [d.s * (d.D_bar[a] + d.E_bar[a]) + d.f0 * d.G_bar[a] * _I for a in range(n)]
        y_bar = [d.s * (d.D[a] + d.E[a]) - d.f0 * d.G[a] * _I for a in range(n)]
        product = Polynomial.sum_of(table, (x[a] * y[a] for a in range(n)))
        product_bar = Polynomial.sum_of(table, (x_bar[a] * y_bar[a] for a in range(n)))
        real = (product + product_bar) * Fraction(1, 2)
        return squares + d.h_inv * real * d.m

    def expanded_form(self) -> Polynomial:
        """ψ regrouped into |G|², |D|² + |E|² and the real and imaginary cross terms."""
        d = self.data
        m, f0, s, h = d.m, d.f0, d.s, d.h
        f0_sq = f0 * f0
        p1 = h - f0_sq * m
        cross = f0 * s * (m * 4)
        body = (
            p1 * self.norm2({"G": 1}) * 3
            + (h * (2 - m) + f0_sq * m) * (self.norm2({"D": 1}) + self.norm2({"E": 1}))
            + p1 * (self.re("G", "D") - self.re("G", "E")) * 2
            - cross * (self.im("G", "D") + self.im("G", "E"))
            + (h * (1 - m) + f0_sq * m) * self.re("D", "E") * 2
            - cross * self.im("D", "E")
        )
        return d.h_inv * body

    def completed_squares(self, coefficients: Dict[str, TrackedFraction]) -> TrackedFraction:
        """``c1|G + c2 D + c3 E|² + c4|D + c5 E|² + c6|E|²``."""
        first, second, third = self.square_terms(coefficients)
        return first + second + third

    def square_terms(
        self, coefficients: Dict[str, TrackedFraction]
    ) -> Tuple[TrackedFraction, TrackedFraction, TrackedFraction]:
        """The three weighted squares of the completed form, separately."""
        c = coefficients
        cb = {name: _conjugate_coefficient(value) for name, value in c.items()}
        p = self.products

        first = (
            c["c2"] * p[("D", "G")]
            + c["c3"] * p[("E", "G")]
            + cb["c2"] * p[("G", "D")]
            + cb["c3"] * p[("G", "E")]
            + (c["c2"] * cb["c2"]) * p[("D", "D")]
            + (c["c2"] * cb["c3"]) * p[("D", "E")]
            + (c["c3"] * cb["c2"]) * p[("E", "D")]
            + (c["c3"] * cb["c3"]) * p[("E", "E")]
            + p[("G", "G")]
        )
        second = (
            c["c5"] * p[("E", "D")]
            + cb["c5"] * p[("D", "E")]
            + (c["c5"] * cb["c5"]) * p[("E", "E")]
            + p[("D", "D")]
        )
        return c["c1"] * first, c["c4"] * second, c["c6"] * p[("E", "E")]
