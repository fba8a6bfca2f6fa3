"""Polynomial fractions over a fixed set of named, nonzero denominator factors."""

from typing import Callable, Dict, Mapping, Optional, Tuple, Union

from crlab.algebra.gaussian import GaussianRational
from crlab.algebra.params import ParamPoly
from crlab.algebra.polynomial import Polynomial

Operand = Union["TrackedFraction", Polynomial, int, GaussianRational, ParamPoly]


class TrackedFraction:
    """``numerator / Π factor^power`` for factors from a shared registry.

    Factors are kept by name and never divided out, so sums bring both sides
    to the common multiple of their denominators and a zero test only looks at
    the numerator.
    """

    __slots__ = ("numerator", "powers", "factors")

    def __init__(
        self,
        numerator: Polynomial,
        factors: Mapping[str, Polynomial],
        powers: Optional[Mapping[str, int]] = None,
    ) -> None:
        self.numerator = numerator
        self.factors = factors
        self.powers: Dict[str, int] = {k: v for k, v in (powers or {}).items() if v}

    @classmethod
    def over(
        cls, numerator: Polynomial, factors: Mapping[str, Polynomial], *names: str
    ) -> "TrackedFraction":
        """``numerator`` divided by the listed factors (a name may repeat)."""
        powers: Dict[str, int] = {}
        for name in names:
            if name not in factors:
                raise KeyError(f"Unknown denominator factor {name!r}")
            powers[name] = powers.get(name, 0) + 1
        return cls(numerator, factors, powers)

    def _lift(self, other: Operand) -> "TrackedFraction":
        if isinstance(other, TrackedFraction):
            return other
        if isinstance(other, Polynomial):
            return TrackedFraction(other, self.factors)
        return TrackedFraction(Polynomial.constant(self.numerator.table, other), self.factors)

    def _raised(self, target: Mapping[str, int]) -> Polynomial:
        numerator = self.numerator
        for name, power in sorted(target.items()):
            missing = power - self.powers.get(name, 0)
            if missing:
                numerator = numerator * self.factors[name] ** missing
        return numerator

    def __add__(self, other: Operand) -> "TrackedFraction":
        other = self._lift(other)
        if self.powers == other.powers:
            return TrackedFraction(self.numerator + other.numerator, self.factors, self.powers)
        common = dict(self.powers)
        for name, power in other.powers.items():
            common[name] = max(common.get(name, 0), power)
        return TrackedFraction(self._raised(common) + other._raised(common), self.factors, common)

    __radd__ = __add__

    def __neg__(self) -> "TrackedFraction":
        return TrackedFraction(-self.numerator, self.factors, self.powers)

    def __sub__(self, other: Operand) -> "TrackedFraction":
        return self + (-self._lift(other))

    def __rsub__(self, other: Operand) -> "TrackedFraction":
        return self._lift(other) - self

    def __mul__(self, other: Operand) -> "TrackedFraction":
        other = self._lift(other)
        powers = dict(self.powers)
        for name, power in other.powers.items():
            powers[name] = powers.get(name, 0) + power
        return TrackedFraction(self.numerator * other.numerator, self.factors, powers)

    __rmul__ = __mul__

    def map_numerator(self, fn: Callable[[Polynomial], Polynomial]) -> "TrackedFraction":
        """Apply ``fn`` to the numerator; ``fn`` must fix every factor."""
        return TrackedFraction(fn(self.numerator), self.factors, self.powers)

    def substitute(self, fn: Callable[[Polynomial], Polynomial]) -> "TrackedFraction":
        """Apply a ring map to the numerator and to every factor."""
        factors = {name: fn(poly) for name, poly in self.factors.items()}
        return TrackedFraction(fn(self.numerator), factors, self.powers)

    def denominator(self) -> Polynomial:
        result = Polynomial.constant(self.numerator.table, 1)
        for name, power in sorted(self.powers.items()):
            result = result * self.factors[name] ** power
        return result

    def denominator_names(self) -> Tuple[str, ...]:
        return tuple(name for name, power in sorted(self.powers.items()) for _ in range(power))

    def __repr__(self) -> str:
        names = "·".join(self.denominator_names()) or "1"
        return f"TrackedFraction(({self.numerator}) / {names})"
