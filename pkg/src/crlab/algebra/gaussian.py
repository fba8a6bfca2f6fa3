"""Exact Gaussian rationals for CRLab.

Every symbolic computation in the laboratory runs over the field Q(i): complex
numbers whose real and imaginary parts are arbitrary-precision fractions.
"""

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "GaussianRational"]


class ExactDivisionError(ZeroDivisionError):
    """Raised when an exact quantity is divided by zero."""


def to_fraction(value: Union[int, Fraction, str]) -> Fraction:
    """Convert an exact value to a Fraction.

    Args:
        value: Integer, Fraction or a string such as ``"3/4"`` or ``"-2"``.

    Returns:
        The value as a Fraction.

    Raises:
        TypeError: If a floating-point value is passed.
    """
    if isinstance(value, float):
        raise TypeError("Floating-point values are not exact; pass a Fraction or a string")
    if isinstance(value, bool):
        return Fraction(int(value))
    return Fraction(value)


class GaussianRational:
    """A complex number re + i·im with rational parts.

    Instances are immutable. Arithmetic with ints and Fractions is supported on
    both sides; floats are rejected so no rounding can leak into exact results.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Union[Rational, str] = 0, im: Union[Rational, str] = 0) -> None:
        self.re: Fraction = to_fraction(re)
        self.im: Fraction = to_fraction(im)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value: Scalar) -> "GaussianRational":
        """Turn an int, Fraction or GaussianRational into a GaussianRational."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls._make(Fraction(value), Fraction(0))
        raise TypeError(f"Cannot use {type(value).__name__} as an exact scalar")

    @classmethod
    def i(cls) -> "GaussianRational":
        """The imaginary unit."""
        return cls._make(Fraction(0), Fraction(1))

    def __add__(self, other: Scalar) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return GaussianRational._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __sub__(self, other: Scalar) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return GaussianRational._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other: Scalar) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other: Scalar) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return GaussianRational._make(a * c, Fraction(0))
            return GaussianRational._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ExactDivisionError("division of a Gaussian rational by zero")
            return GaussianRational._make(self.re / other, self.im / other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        norm = other.abs2()
        if norm == 0:
            raise ExactDivisionError("division of a Gaussian rational by zero")
        product = self * other.conjugate()
        return GaussianRational._make(product.re / norm, product.im / norm)

    def __rtruediv__(self, other: Scalar) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            return GaussianRational.coerce(other) / self
        return NotImplemented

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return GaussianRational._make(Fraction(1), Fraction(0)) / (self ** (-exponent))
        result = GaussianRational._make(Fraction(1), Fraction(0))
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        """Complex conjugate."""
        return GaussianRational._make(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus re² + im², an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"


def _imag_str(value: Fraction) -> str:
    if value == 1:
        return "i"
    if value == -1:
        return "-i"
    return f"{value}i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational.i()

_OPERATIONS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "−": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "×": lambda a, b: a * b,
    "/": lambda a, b: a / b,
    "÷": lambda a, b: a / b,
}


def scalar_arith(a: Scalar, b: Scalar, op: str) -> GaussianRational:
    """Apply one field operation to two exact scalars.

    Args:
        a: Left operand.
        b: Right operand.
        op: One of ``+ - * /`` (the symbols ``− × ÷`` are accepted too).

    Returns:
        The exact result in canonical form.

    Raises:
        ExactDivisionError: If ``op`` is a division and ``b`` is zero.
        ValueError: If ``op`` is not a field operation.
    """
    try:
        operation = _OPERATIONS[op]
    except KeyError:
        raise ValueError(f"Unknown operation {op!r}") from None
    return operation(GaussianRational.coerce(a), GaussianRational.coerce(b))
