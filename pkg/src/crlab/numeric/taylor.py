"""Truncated multivariate Taylor series for forward-mode differentiation.

A series in the real displacements ``d_0 … d_{k-1}`` around a point stores the
Taylor coefficients ``c_a`` of ``Σ c_a d^a`` for every multi-index ``a`` with
``|a| ≤ order``. Coefficients are either Gaussian rationals (exact mode) or
Python complex numbers (floating mode); the two are never mixed.
"""

import cmath
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Mapping, Sequence, Tuple, Union

from crlab.algebra.gaussian import GaussianRational

MultiIndex = Tuple[int, ...]
Coefficient = Union[GaussianRational, complex]
Operand = Union["Taylor", int, Fraction, float, complex, GaussianRational]


def multi_indices(nvars: int, order: int) -> Iterator[MultiIndex]:
    """All multi-indices of ``nvars`` variables with total degree ``≤ order``."""

    def extend(prefix: MultiIndex, remaining: int) -> Iterator[MultiIndex]:
        if len(prefix) == nvars:
            yield prefix
            return
        for k in range(remaining + 1):
            yield from extend(prefix + (k,), remaining - k)

    yield from extend((), order)


def _multiplicity(index: MultiIndex) -> int:
    result = 1
    for k in index:
        result *= factorial(k)
    return result


class Taylor:
    """A truncated Taylor series with valid terms up to ``order``."""

    __slots__ = ("nvars", "order", "exact", "coeffs")

    def __init__(
        self, nvars: int, order: int, coeffs: Mapping[MultiIndex, Coefficient], exact: bool
    ) -> None:
        self.nvars = nvars
        self.order = order
        self.exact = exact
        self.coeffs: Dict[MultiIndex, Coefficient] = {
            index: value for index, value in coeffs.items() if value and sum(index) <= order
        }

    # construction

    @classmethod
    def constant(cls, value: Operand, nvars: int, order: int, exact: bool) -> "Taylor":
        scalar = coerce_scalar(value, exact)
        return cls(nvars, order, {(0,) * nvars: scalar}, exact)

    @classmethod
    def variable(cls, index: int, base: Operand, nvars: int, order: int, exact: bool) -> "Taylor":
        """The coordinate ``base + d_index``."""
        if not 0 <= index < nvars:
            raise ValueError(f"Variable index {index} is outside 0..{nvars - 1}")
        unit = tuple(1 if k == index else 0 for k in range(nvars))
        coeffs = {(0,) * nvars: coerce_scalar(base, exact), unit: coerce_scalar(1, exact)}
        return cls(nvars, order, coeffs, exact)

    def coerce(self, value: Operand) -> Coefficient:
        """Convert a scalar to this series' coefficient type."""
        return coerce_scalar(value, self.exact)

    @property
    def imag_unit(self) -> Coefficient:
        return GaussianRational.i() if self.exact else 1j

    def _lift(self, other: Operand) -> "Taylor":
        if isinstance(other, Taylor):
            if other.nvars != self.nvars or other.exact != self.exact:
                raise ValueError("Series over different variables or coefficient kinds")
            return other
        return Taylor.constant(other, self.nvars, self.order, self.exact)

    # access

    @property
    def value(self) -> Coefficient:
        return self.coeffs.get((0,) * self.nvars, self.coerce(0))

    def coefficient(self, index: MultiIndex) -> Coefficient:
        return self.coeffs.get(tuple(index), self.coerce(0))

    def partial(self, index: MultiIndex) -> Coefficient:
        """The partial derivative ``∂^a`` at the expansion point.

        Raises:
            ValueError: If ``|a|`` exceeds the valid order.
        """
        index = tuple(index)
        if len(index) != self.nvars or sum(index) > self.order:
            raise ValueError(f"Partial {index} is not available at order {self.order}")
        return self.coefficient(index) * _multiplicity(index)

    # arithmetic

    def __add__(self, other: Operand) -> "Taylor":
        rhs = self._lift(other)
        coeffs = dict(self.coeffs)
        for index, value in rhs.coeffs.items():
            coeffs[index] = coeffs[index] + value if index in coeffs else value
        return Taylor(self.nvars, min(self.order, rhs.order), coeffs, self.exact)

    __radd__ = __add__

    def __neg__(self) -> "Taylor":
        return Taylor(self.nvars, self.order, {k: -v for k, v in self.coeffs.items()}, self.exact)

    def __sub__(self, other: Operand) -> "Taylor":
        return self + (-self._lift(other))

    def __rsub__(self, other: Operand) -> "Taylor":
        return self._lift(other) - self

    def __mul__(self, other: Operand) -> "Taylor":
        if not isinstance(other, Taylor):
            scalar = self.coerce(other)
            return Taylor(
                self.nvars, self.order, {k: v * scalar for k, v in self.coeffs.items()}, self.exact
            )
        rhs = self._lift(other)
        order = min(self.order, rhs.order)
        coeffs: Dict[MultiIndex, Coefficient] = {}
        for a, x in self.coeffs.items():
            degree = sum(a)
            for b, y in rhs.coeffs.items():
                if degree + sum(b) > order:
                    continue
                index = tuple(i + j for i, j in zip(a, b))
                coeffs[index] = coeffs[index] + x * y if index in coeffs else x * y
        return Taylor(self.nvars, order, coeffs, self.exact)

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "Taylor":
        if isinstance(other, Taylor):
            return self * other.reciprocal()
        return self * (self.coerce(1) / self.coerce(other))

    def __rtruediv__(self, other: Operand) -> "Taylor":
        return self.reciprocal() * other

    def __pow__(self, exponent: int) -> "Taylor":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = Taylor.constant(1, self.nvars, self.order, self.exact)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "Taylor":
        """Coefficientwise conjugation; valid because the displacements are real."""
        return Taylor(
            self.nvars, self.order, {k: v.conjugate() for k, v in self.coeffs.items()}, self.exact
        )

    def derivative(self, variable: int) -> "Taylor":
        """``∂/∂d_variable``; the result is valid to one order less."""
        coeffs: Dict[MultiIndex, Coefficient] = {}
        for index, value in self.coeffs.items():
            k = index[variable]
            if k:
                lowered = index[:variable] + (k - 1,) + index[variable + 1 :]
                coeffs[lowered] = value * k
        return Taylor(self.nvars, max(self.order - 1, 0), coeffs, self.exact)

    # composition with scalar functions

    def compose(self, derivatives: Sequence[Coefficient]) -> "Taylor":
        """``φ(self)`` from ``φ(c), φ'(c), φ''(c), …`` at the constant term ``c``.

        Args:
            derivatives: At least ``order + 1`` derivative values of ``φ``.
        """
        if len(derivatives) <= self.order:
            raise ValueError(f"compose needs {self.order + 1} derivatives, got {len(derivatives)}")
        shift = self - self.value
        result = Taylor.constant(derivatives[0], self.nvars, self.order, self.exact)
        power = Taylor.constant(1, self.nvars, self.order, self.exact)
        for k in range(1, self.order + 1):
            power = power * shift
            result = result + power * (self.coerce(derivatives[k]) / factorial(k))
        return result

    def reciprocal(self) -> "Taylor":
        c = self.value
        if not c:
            raise ZeroDivisionError("reciprocal of a series with zero constant term")
        inverse = self.coerce(1) / c
        derivatives: List[Coefficient] = []
        current = inverse
        for k in range(self.order + 1):
            derivatives.append(current)
            current = current * inverse * (-(k + 1))
        return self.compose(derivatives)

    def log(self, drop_constant: bool = False) -> "Taylor":
        """Natural logarithm (principal branch).

        In exact mode the constant ``log c`` is not rational, so ``drop_constant``
        must be set; the result then differs from ``log`` by that constant.
        """
        c = self.value
        if not c:
            raise ZeroDivisionError("logarithm of a series with zero constant term")
        if self.exact and not drop_constant:
            raise ValueError("exact series support log only with drop_constant=True")
        inverse = self.coerce(1) / c
        derivatives: List[Coefficient] = [self.coerce(0) if drop_constant else cmath.log(c)]
        current = inverse
        for k in range(1, self.order + 1):
            derivatives.append(current)
            current = current * inverse * (-k)
        return self.compose(derivatives)

    def exp(self) -> "Taylor":
        self._require_float("exp")
        value = cmath.exp(complex(self.value))
        return self.compose([value] * (self.order + 1))

    def power(self, exponent: float) -> "Taylor":
        """``self ** exponent`` for a real exponent (principal branch)."""
        self._require_float("power")
        c = complex(self.value)
        if c == 0:
            raise ZeroDivisionError("fractional power of a series with zero constant term")
        derivatives: List[Coefficient] = []
        falling = 1.0
        for k in range(self.order + 1):
            derivatives.append(falling * c ** (exponent - k))
            falling *= exponent - k
        return self.compose(derivatives)

    def sqrt(self) -> "Taylor":
        return self.power(0.5)

    def _require_float(self, name: str) -> None:
        if self.exact:
            raise ValueError(f"{name} is not available for exact series")

    def __repr__(self) -> str:
        return f"Taylor(nvars={self.nvars}, order={self.order}, terms={len(self.coeffs)})"


def coerce_scalar(value: Operand, exact: bool) -> Coefficient:
    if isinstance(value, Taylor):
        raise TypeError("expected a scalar, got a series")
    if exact:
        if isinstance(value, (float, complex)):
            raise TypeError("Floating-point values cannot enter an exact series")
        return GaussianRational.coerce(value)
    return complex(value)
