"""CR vector fields acting on Taylor series, CR jets and the tensors built from them.

Real coordinates are ordered ``x_1 … x_n, y_1 … y_n, t`` with ``z_α = x_α + i y_α``.
With the Wirtinger derivatives ``∂_{z_α} = (∂_{x_α} - i ∂_{y_α})/2`` the fields are
``Z_α = ∂_{z_α} + i z̄_α ∂_t`` and ``Z_ᾱ = ∂_{z̄_α} - i z_α ∂_t``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Union

from crlab.algebra.gaussian import GaussianRational
from crlab.jets.words import Word, canonicalize_word, is_canonical, letter_name
from crlab.numeric.taylor import Coefficient, Taylor, coerce_scalar

PointScalar = Union[int, Fraction, float, complex, GaussianRational]


class CoordinateSeries:
    """The coordinate functions of ``H^n`` as series around a point."""

    def __init__(
        self, z: Sequence[PointScalar], t: PointScalar, order: int, exact: bool
    ) -> None:
        self.n = len(z)
        self.order = order
        self.exact = exact
        nvars = 2 * self.n + 1
        base = [coerce_scalar(v, exact) for v in z]
        self.x = [Taylor.variable(a, _real(v), nvars, order, exact) for a, v in enumerate(base)]
        self.y = [
            Taylor.variable(self.n + a, _imag(v), nvars, order, exact) for a, v in enumerate(base)
        ]
        self.t = Taylor.variable(2 * self.n, t, nvars, order, exact)
        i = self.t.imag_unit
        self._z = [x + y * i for x, y in zip(self.x, self.y)]
        self._z_bar = [x - y * i for x, y in zip(self.x, self.y)]

    @property
    def nvars(self) -> int:
        return 2 * self.n + 1

    def z(self, alpha: int) -> Taylor:
        return self._z[alpha - 1]

    def z_bar(self, alpha: int) -> Taylor:
        return self._z_bar[alpha - 1]

    def abs2_z(self) -> Taylor:
        """``|z|² = Σ x_α² + y_α²``."""
        total = Taylor.constant(0, self.nvars, self.order, self.exact)
        for x, y in zip(self.x, self.y):
            total = total + x * x + y * y
        return total


def _real(value: Coefficient) -> Coefficient:
    if isinstance(value, GaussianRational):
        return GaussianRational(value.re)
    return complex(value.real)


def _imag(value: Coefficient) -> Coefficient:
    if isinstance(value, GaussianRational):
        return GaussianRational(value.im)
    return complex(value.imag)


def apply_letter(series: Taylor, letter: int, coords: CoordinateSeries) -> Taylor:
    """Apply ``Z_α`` (``letter = α``), ``Z_ᾱ`` (``-α``) or ``∂_t`` (``0``)."""
    n = coords.n
    d_t = series.derivative(2 * n)
    if letter == 0:
        return d_t
    alpha = abs(letter)
    if alpha > n:
        raise ValueError(f"Index letter {letter} is outside 1..{n}")
    i = series.imag_unit
    half = series.coerce(Fraction(1, 2))
    d_x = series.derivative(alpha - 1)
    d_y = series.derivative(n + alpha - 1)
    if letter > 0:
        return (d_x - d_y * i) * half + coords.z_bar(alpha) * d_t * i
    return (d_x + d_y * i) * half - coords.z(alpha) * d_t * i


@dataclass
class CRJets:
    """Values ``f_w`` at a point for words up to a maximal length.

    Exact runs hold Gaussian rationals, floating runs hold complex numbers.
    Words are stored as computed; :meth:`jet` reduces any other word to the
    stored canonical ones with the commutator ``[Z_α, Z_β̄] = -2i δ_αβ ∂_t``.
    """

    n: int
    exact: bool
    jets: Dict[Word, Coefficient] = field(default_factory=dict)
    value: Optional[Coefficient] = None
    e2f: Optional[Coefficient] = None

    def scalar(self, value: Union[int, Fraction, GaussianRational]) -> Coefficient:
        if self.exact:
            return GaussianRational.coerce(value)
        return complex(value)

    def jet(self, *letters: int) -> Coefficient:
        word = tuple(letters)
        if word in self.jets:
            return self.jets[word]
        total = self.scalar(0)
        for canonical, coefficient in canonicalize_word(word):
            if canonical not in self.jets:
                raise KeyError(f"jet {word} needs {canonical}, which was not computed")
            total = total + self.jets[canonical] * self.scalar(coefficient)
        return total

    def grad2(self) -> Coefficient:
        """``|∂f|² = Σ f_α f_ᾱ``."""
        total = self.scalar(0)
        for a in range(1, self.n + 1):
            total = total + self.jet(a) * self.jet(-a)
        return total

    def canonical(self) -> Dict[Word, Coefficient]:
        return {w: v for w, v in self.jets.items() if is_canonical(w)}

    def commutator_defect(self) -> float:
        """Largest ``|f_{β̄α} - f_{αβ̄} + 2i δ_αβ f_0|`` over the stored second jets."""
        worst = 0.0
        two_i = self.scalar(GaussianRational(0, 2))
        for a in range(1, self.n + 1):
            for b in range(1, self.n + 1):
                swapped, ordered = (-b, a), (a, -b)
                if swapped not in self.jets or ordered not in self.jets:
                    continue
                defect = self.jets[swapped] - self.jets[ordered]
                if a == b:
                    defect = defect + two_i * self.jet(0)
                worst = max(worst, abs(complex(defect)))
        return worst

    def names(self) -> Dict[str, Coefficient]:
        return {"f_{" + ",".join(letter_name(x) for x in w) + "}": v for w, v in self.jets.items()}


def _words(n: int, max_length: int, canonical_only: bool) -> Iterator[Word]:
    letters = list(range(1, n + 1)) + [-a for a in range(1, n + 1)] + [0]

    def extend(prefix: Word, remaining: int) -> Iterator[Word]:
        yield prefix
        if not remaining:
            return
        for letter in letters:
            word = prefix + (letter,)
            if canonical_only and not is_canonical(word):
                continue
            yield from extend(word, remaining - 1)

    yield from extend((), max_length)


def cr_jets(
    series: Taylor,
    coords: CoordinateSeries,
    max_length: int,
    canonical_only: bool = True,
) -> CRJets:
    """Evaluate ``f_w`` at the expansion point for every word ``|w| ≤ max_length``.

    Args:
        series: Taylor series of ``f``, valid at least to ``max_length``.
        coords: Coordinate series around the same point.
        max_length: Longest word.
        canonical_only: Restrict to canonical words; otherwise every word is
            applied literally (needed for commutator checks).

    Raises:
        ValueError: If the series order is below ``max_length``.
    """
    if series.order < max_length:
        raise ValueError(f"series of order {series.order} cannot give jets of length {max_length}")
    jets = CRJets(n=coords.n, exact=series.exact)
    cache: Dict[Word, Taylor] = {(): series}
    for word in _words(coords.n, max_length, canonical_only):
        if word:
            cache[word] = apply_letter(cache[word[:-1]], word[-1], coords)
        jets.jets[word] = cache[word].value
    jets.value = series.value
    return jets


@dataclass
class CRTensors:
    """Torsion ``D_{αβ}``, trace-free Einstein ``E_{αβ̄}`` and ``G_α`` at a point."""

    D: List[List[Coefficient]]
    E: List[List[Coefficient]]
    G: List[Coefficient]

    def entries(self) -> Iterator[Coefficient]:
        for row in self.D:
            yield from row
        for row in self.E:
            yield from row
        yield from self.G

    def max_abs(self) -> float:
        return max((abs(complex(v)) for v in self.entries()), default=0.0)

    def nonzero(self) -> List[str]:
        """Names of exactly nonzero entries."""
        found = []
        n = len(self.G)
        for a in range(n):
            for b in range(n):
                if self.D[a][b]:
                    found.append(f"D[{a + 1},{b + 1}]={self.D[a][b]}")
                if self.E[a][b]:
                    found.append(f"E[{a + 1},{b + 1}b]={self.E[a][b]}")
            if self.G[a]:
                found.append(f"G[{a + 1}]={self.G[a]}")
        return found


def cr_tensors(jets: CRJets) -> CRTensors:
    """Torsion, trace-free Einstein tensor and ``G`` from the jets.

    ``D_{αβ} = f_{αβ} - 2f_α f_β``, ``E_{αβ̄} = f_{αβ̄} - (1/n) f_{γγ̄} δ_{αβ}``
    and ``G_α = i f_{0α} + g f_α`` with ``g = |∂f|² + e^{2f} - i f_0``.

    Raises:
        ValueError: If ``jets.e2f`` is not set.
    """
    if jets.e2f is None:
        raise ValueError("e^{2f} is needed for G")
    n = jets.n
    i = jets.scalar(GaussianRational.i())
    trace = jets.scalar(0)
    for c in range(1, n + 1):
        trace = trace + jets.jet(c, -c)
    g = jets.grad2() + jets.e2f - i * jets.jet(0)
    D = [
        [jets.jet(a, b) - jets.jet(a) * jets.jet(b) * 2 for b in range(1, n + 1)]
        for a in range(1, n + 1)
    ]
    E = [
        [jets.jet(a, -b) - (trace / n if a == b else jets.scalar(0)) for b in range(1, n + 1)]
        for a in range(1, n + 1)
    ]
    G = [i * jets.jet(0, a) + g * jets.jet(a) for a in range(1, n + 1)]
    return CRTensors(D=D, E=E, G=G)


def sublaplacian(jets: CRJets) -> Coefficient:
    """``Δ_b f = -Re Σ_α f_{αᾱ}``."""
    total = jets.scalar(0)
    for a in range(1, jets.n + 1):
        total = total + jets.jet(a, -a)
    return -(total + total.conjugate()) / 2


def yamabe_residual(jets: CRJets, e2f_coefficient: Optional[int] = None) -> Coefficient:
    """``Δ_b f - n|∂f|² - c e^{2f}`` with ``c = n`` unless overridden.

    Raises:
        ValueError: If ``jets.e2f`` is not set.
    """
    if jets.e2f is None:
        raise ValueError("e^{2f} is needed for the residual")
    c = jets.n if e2f_coefficient is None else e2f_coefficient
    return sublaplacian(jets) - jets.grad2() * jets.n - jets.e2f * c
