"""Formal parameters: polynomial coefficients and affine exponents.

The divergence identities hold for whole families of parameters (the exponent m,
and q, θ in the cutoff identity). Rather than substituting numbers, the
parameters are carried symbolically: as polynomial coefficient data
(``ParamPoly``) and as slopes of exponents (``AffineExponent``).
"""

from fractions import Fraction
from typing import Dict, Iterator, Mapping, NamedTuple, Optional, Tuple, Union

from crlab.algebra.gaussian import GaussianRational, Scalar, to_fraction

PARAMETERS: Tuple[str, ...] = ("m", "q", "theta")
_PARAM_INDEX = {name: index for index, name in enumerate(PARAMETERS)}

Degree = Tuple[int, int, int]
_CONSTANT_DEGREE: Degree = (0, 0, 0)


def _param_index(name: str) -> int:
    try:
        return _PARAM_INDEX[name]
    except KeyError:
        raise KeyError(f"Unknown parameter {name!r}; expected one of {PARAMETERS}") from None


class ParamPoly:
    """Polynomial in the formal parameters m, q, θ over the Gaussian rationals.

    The coefficient map never stores zero entries, so equality is map equality.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Optional[Dict[Degree, GaussianRational]] = None) -> None:
        self.coefficients: Dict[Degree, GaussianRational] = coefficients or {}

    @classmethod
    def constant(cls, value: Scalar) -> "ParamPoly":
        value = GaussianRational.coerce(value)
        if value.is_zero():
            return cls()
        return cls({_CONSTANT_DEGREE: value})

    @classmethod
    def variable(cls, name: str, power: int = 1) -> "ParamPoly":
        degree = [0, 0, 0]
        degree[_param_index(name)] = power
        return cls({tuple(degree): GaussianRational(1)})  # type: ignore[dict-item]

    @classmethod
    def coerce(cls, value: Union["ParamPoly", Scalar]) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            return value
        return cls.constant(value)

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_constant(self) -> bool:
        return not self.coefficients or (
            len(self.coefficients) == 1 and _CONSTANT_DEGREE in self.coefficients
        )

    def constant_value(self) -> GaussianRational:
        """The value of a constant polynomial.

        Raises:
            ValueError: If the polynomial depends on a parameter.
        """
        if not self.is_constant():
            raise ValueError(f"{self} depends on a formal parameter")
        return self.coefficients.get(_CONSTANT_DEGREE, GaussianRational(0))

    def __add__(self, other: Union["ParamPoly", Scalar]) -> "ParamPoly":
        other = ParamPoly.coerce(other)
        if not other.coefficients:
            return self
        if not self.coefficients:
            return other
        result = dict(self.coefficients)
        for degree, value in other.coefficients.items():
            total = result.get(degree)
            total = value if total is None else total + value
            if total.is_zero():
                result.pop(degree, None)
            else:
                result[degree] = total
        return ParamPoly(result)

    __radd__ = __add__

    def __neg__(self) -> "ParamPoly":
        return ParamPoly({degree: -value for degree, value in self.coefficients.items()})

    def __sub__(self, other: Union["ParamPoly", Scalar]) -> "ParamPoly":
        return self + (-ParamPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> "ParamPoly":
        return ParamPoly.coerce(other) - self

    def __mul__(self, other: Union["ParamPoly", Scalar]) -> "ParamPoly":
        if not isinstance(other, ParamPoly):
            value = GaussianRational.coerce(other)
            if value.is_zero():
                return ParamPoly()
            return ParamPoly({d: c * value for d, c in self.coefficients.items()})
        left, right = self.coefficients, other.coefficients
        if len(left) == 1 and len(right) == 1:
            (d1, c1), = left.items()
            (d2, c2), = right.items()
            return ParamPoly({(d1[0] + d2[0], d1[1] + d2[1], d1[2] + d2[2]): c1 * c2})
        result: Dict[Degree, GaussianRational] = {}
        for d1, c1 in left.items():
            for d2, c2 in right.items():
                degree = (d1[0] + d2[0], d1[1] + d2[1], d1[2] + d2[2])
                total = result.get(degree)
                product = c1 * c2
                result[degree] = product if total is None else total + product
        return ParamPoly({d: c for d, c in result.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "ParamPoly":
        result = ParamPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def conjugate(self) -> "ParamPoly":
        """Conjugate the coefficients; the parameters themselves are real."""
        return ParamPoly({d: c.conjugate() for d, c in self.coefficients.items()})

    def substitute(self, values: Mapping[str, Scalar]) -> "ParamPoly":
        """Replace some parameters by exact numbers."""
        if not values:
            return self
        exact = {_param_index(name): GaussianRational.coerce(v) for name, v in values.items()}
        result = ParamPoly()
        for degree, coefficient in self.coefficients.items():
            kept = list(degree)
            factor = coefficient
            for index, value in exact.items():
                if kept[index]:
                    factor = factor * value ** kept[index]
                    kept[index] = 0
            if not factor.is_zero():
                result = result + ParamPoly({tuple(kept): factor})  # type: ignore[dict-item]
        return result

    def evaluate(self, values: Mapping[str, Scalar]) -> GaussianRational:
        """Evaluate at a full assignment of the parameters that occur."""
        return self.substitute(values).constant_value()

    def items(self) -> Iterator[Tuple[Degree, GaussianRational]]:
        return iter(sorted(self.coefficients.items()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ParamPoly):
            return self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self.coefficients == ParamPoly.constant(other).coefficients
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"ParamPoly({self})"

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for degree, coefficient in self.items():
            names = "*".join(
                name if power == 1 else f"{name}^{power}"
                for name, power in zip(PARAMETERS, degree)
                if power
            )
            if not names:
                parts.append(f"({coefficient})")
            elif coefficient == 1:
                parts.append(names)
            else:
                parts.append(f"({coefficient})*{names}")
        return " + ".join(parts)


class AffineExponent(NamedTuple):
    """Exponent ``constant + Σ slope·parameter`` of a weight factor.

    Addition is componentwise and the zero exponent means the factor is absent.
    ``slopes`` is kept sorted by parameter name with no zero entries, so two
    equal exponents are equal tuples.
    """

    constant: Fraction
    slopes: Tuple[Tuple[str, Fraction], ...] = ()

    @classmethod
    def of(
        cls, constant: Union[int, Fraction, str] = 0, **slopes: Union[int, Fraction, str]
    ) -> "AffineExponent":
        cleaned = tuple(
            sorted(
                (_check_param(name), to_fraction(v))
                for name, v in slopes.items()
                if to_fraction(v)
            )
        )
        return cls(to_fraction(constant), cleaned)

    def __add__(self, other: "AffineExponent") -> "AffineExponent":  # type: ignore[override]
        return exponent_add(self, other)

    def __neg__(self) -> "AffineExponent":
        return AffineExponent(-self.constant, tuple((n, -s) for n, s in self.slopes))

    def __sub__(self, other: "AffineExponent") -> "AffineExponent":
        return exponent_add(self, -other)

    def shift(self, amount: Union[int, Fraction]) -> "AffineExponent":
        """Add a constant to the exponent."""
        return AffineExponent(self.constant + amount, self.slopes)

    def scale(self, factor: Union[int, Fraction]) -> "AffineExponent":
        if not factor:
            return ZERO_EXPONENT
        slopes = tuple((n, s * factor) for n, s in self.slopes)
        return AffineExponent(self.constant * factor, slopes)

    def is_zero(self) -> bool:
        return not self.constant and not self.slopes

    def is_integer(self) -> bool:
        """True when the exponent is a parameter-free integer."""
        return not self.slopes and self.constant.denominator == 1

    def substitute(self, values: Mapping[str, Union[int, Fraction]]) -> "AffineExponent":
        constant = self.constant
        slopes = []
        for name, slope in self.slopes:
            if name in values:
                constant += slope * to_fraction(values[name])
            else:
                slopes.append((name, slope))
        return AffineExponent(constant, tuple(slopes))

    def to_param_poly(self) -> ParamPoly:
        result = ParamPoly.constant(self.constant)
        for name, slope in self.slopes:
            result = result + ParamPoly.variable(name) * slope
        return result

    def __str__(self) -> str:
        parts = [] if not self.constant and self.slopes else [str(self.constant)]
        for name, slope in self.slopes:
            if slope == 1:
                parts.append(name)
            elif slope == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{slope}*{name}")
        return "+".join(parts).replace("+-", "-")


def _check_param(name: str) -> str:
    _param_index(name)
    return name


def exponent_add(a: AffineExponent, b: AffineExponent) -> AffineExponent:
    """Componentwise sum of two affine exponents."""
    if not b.slopes and not a.slopes:
        return AffineExponent(a.constant + b.constant, ())
    slopes: Dict[str, Fraction] = dict(a.slopes)
    for name, slope in b.slopes:
        total = slopes.get(name, Fraction(0)) + slope
        if total:
            slopes[name] = total
        else:
            slopes.pop(name, None)
    return AffineExponent(a.constant + b.constant, tuple(sorted(slopes.items())))


ZERO_EXPONENT = AffineExponent(Fraction(0), ())
