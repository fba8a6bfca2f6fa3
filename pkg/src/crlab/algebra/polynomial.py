"""Sparse multivariate polynomials with parameter coefficients and weight factors.

A polynomial is a map from monomials to ``ParamPoly`` coefficients. A monomial
has two parts: integer powers of registered atomic symbols, and weight factors
``base^exponent`` whose exponents are ``AffineExponent`` values. Weight bases
(``e^f``, ``h``, ``η``) stand for positive functions; they are never expanded
during arithmetic.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from crlab.algebra.gaussian import GaussianRational, Scalar
from crlab.algebra.params import PARAMETERS, AffineExponent, ParamPoly, exponent_add

Powers = Tuple[Tuple[int, int], ...]
Weights = Tuple[Tuple[int, AffineExponent], ...]
Monomial = Tuple[Powers, Weights]

ONE_MONOMIAL: Monomial = ((), ())


class UnknownSymbolError(KeyError):
    """Raised when an expression refers to a symbol the table does not know."""


class SymbolTable:
    """Ordered registry of atomic symbols and weight bases.

    Registration order is the total order used for monomials, so building the
    table with the same sequence of calls always gives the same normal forms.
    """

    def __init__(self) -> None:
        self._names: List[str] = []
        self._index: Dict[str, int] = {}
        self._weights: List[str] = []
        self._weight_index: Dict[str, int] = {}
        self._frozen = False

    def register(self, name: str) -> int:
        """Register an atomic symbol, returning its id. Re-registering is a no-op."""
        if name in self._index:
            return self._index[name]
        self._check_open()
        self._index[name] = len(self._names)
        self._names.append(name)
        return self._index[name]

    def register_weight(self, name: str) -> int:
        """Register a weight base (a positive function carried with affine exponents)."""
        if name in self._weight_index:
            return self._weight_index[name]
        self._check_open()
        self._weight_index[name] = len(self._weights)
        self._weights.append(name)
        return self._weight_index[name]

    def freeze(self) -> None:
        """Make the table read-only."""
        self._frozen = True

    @property
    def frozen(self) -> bool:
        return self._frozen

    def _check_open(self) -> None:
        if self._frozen:
            raise RuntimeError("symbol table is frozen; register symbols during setup")

    def symbol_id(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownSymbolError(f"Unregistered symbol {name!r}") from None

    def weight_id(self, name: str) -> int:
        try:
            return self._weight_index[name]
        except KeyError:
            raise UnknownSymbolError(f"Unregistered weight base {name!r}") from None

    def has_symbol(self, name: str) -> bool:
        return name in self._index

    def name(self, sid: int) -> str:
        return self._names[sid]

    def weight_name(self, wid: int) -> str:
        return self._weights[wid]

    @property
    def symbols(self) -> Tuple[str, ...]:
        return tuple(self._names)

    @property
    def weight_bases(self) -> Tuple[str, ...]:
        return tuple(self._weights)

    def __len__(self) -> int:
        return len(self._names)


@lru_cache(maxsize=1 << 18)
def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    """Product of two monomials: powers and weight exponents add."""
    if a is ONE_MONOMIAL or a == ONE_MONOMIAL:
        return b
    if b == ONE_MONOMIAL:
        return a
    return _merge_powers(a[0], b[0]), _merge_weights(a[1], b[1])


def _merge_powers(a: Powers, b: Powers) -> Powers:
    if not a:
        return b
    if not b:
        return a
    merged: Dict[int, int] = dict(a)
    for sid, exp in b:
        total = merged.get(sid, 0) + exp
        if total:
            merged[sid] = total
        else:
            merged.pop(sid, None)
    return tuple(sorted(merged.items()))


def _merge_weights(a: Weights, b: Weights) -> Weights:
    if not a:
        return b
    if not b:
        return a
    merged: Dict[int, AffineExponent] = dict(a)
    for wid, exp in b:
        current = merged.get(wid)
        total = exp if current is None else exponent_add(current, exp)
        if total.is_zero():
            merged.pop(wid, None)
        else:
            merged[wid] = total
    return tuple(sorted(merged.items()))


Coefficient = Union[ParamPoly, Scalar]


class Polynomial:
    """Sparse polynomial over a ``SymbolTable``.

    Terms with a zero coefficient are never stored, so two polynomials over the
    same table are equal exactly when their term maps are equal.
    """

    __slots__ = ("table", "terms")

    def __init__(
        self, table: SymbolTable, terms: Optional[Dict[Monomial, ParamPoly]] = None
    ) -> None:
        self.table = table
        self.terms: Dict[Monomial, ParamPoly] = terms if terms is not None else {}

    @classmethod
    def zero(cls, table: SymbolTable) -> "Polynomial":
        return cls(table)

    @classmethod
    def constant(cls, table: SymbolTable, value: Coefficient) -> "Polynomial":
        coefficient = ParamPoly.coerce(value)
        if coefficient.is_zero():
            return cls(table)
        return cls(table, {ONE_MONOMIAL: coefficient})

    @classmethod
    def symbol(cls, table: SymbolTable, name: Union[str, int], power: int = 1) -> "Polynomial":
        sid = name if isinstance(name, int) else table.symbol_id(name)
        if not power:
            return cls.constant(table, 1)
        return cls(table, {(((sid, power),), ()): ParamPoly.constant(1)})

    @classmethod
    def weight(
        cls, table: SymbolTable, base: Union[str, int], exponent: AffineExponent
    ) -> "Polynomial":
        wid = base if isinstance(base, int) else table.weight_id(base)
        if exponent.is_zero():
            return cls.constant(table, 1)
        return cls(table, {((), ((wid, exponent),)): ParamPoly.constant(1)})

    @classmethod
    def from_terms(
        cls, table: SymbolTable, items: Iterable[Tuple[Monomial, ParamPoly]]
    ) -> "Polynomial":
        result: Dict[Monomial, ParamPoly] = {}
        for monomial, coefficient in items:
            _accumulate(result, monomial, coefficient)
        return cls(table, result)

    @classmethod
    def sum_of(cls, table: SymbolTable, polynomials: Iterable["Polynomial"]) -> "Polynomial":
        result: Dict[Monomial, ParamPoly] = {}
        for polynomial in polynomials:
            for monomial, coefficient in polynomial.terms.items():
                _accumulate(result, monomial, coefficient)
        return cls(table, result)

    @classmethod
    def combine(
        cls, table: SymbolTable, items: Iterable[Tuple["Polynomial", Monomial, ParamPoly]]
    ) -> "Polynomial":
        """``Σ polynomial · factor · monomial`` accumulated in a single pass."""
        result: Dict[Monomial, ParamPoly] = {}
        for polynomial, monomial, factor in items:
            for m, c in polynomial.terms.items():
                _accumulate(result, monomial_mul(m, monomial), c * factor)
        return cls(table, result)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE_MONOMIAL in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, ParamPoly]]:
        return iter(sorted(self.terms.items(), key=lambda item: _sort_key(item[0])))

    def _coerce(self, other: Union["Polynomial", Coefficient]) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.table is not self.table:
                raise ValueError("polynomials belong to different symbol tables")
            return other
        return Polynomial.constant(self.table, other)

    def __add__(self, other: Union["Polynomial", Coefficient]) -> "Polynomial":
        other = self._coerce(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if len(other.terms) > len(self.terms):
            big, small = other, self
        else:
            big, small = self, other
        result = dict(big.terms)
        for monomial, coefficient in small.terms.items():
            _accumulate(result, monomial, coefficient)
        return Polynomial(self.table, result)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.table, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: Union["Polynomial", Coefficient]) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coefficient) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other: Union["Polynomial", Coefficient]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(ParamPoly.coerce(other))
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return Polynomial(self.table)
        result: Dict[Monomial, ParamPoly] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _accumulate(result, monomial_mul(m1, m2), c1 * c2)
        return Polynomial(self.table, result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("polynomials only take non-negative integer powers")
        result = Polynomial.constant(self.table, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor: ParamPoly) -> "Polynomial":
        if factor.is_zero():
            return Polynomial(self.table)
        result: Dict[Monomial, ParamPoly] = {}
        for monomial, coefficient in self.terms.items():
            product = coefficient * factor
            if not product.is_zero():
                result[monomial] = product
        return Polynomial(self.table, result)

    def times_monomial(self, monomial: Monomial, factor: ParamPoly) -> "Polynomial":
        """Multiply by a single term ``factor · monomial``."""
        result: Dict[Monomial, ParamPoly] = {}
        for m, c in self.terms.items():
            _accumulate(result, monomial_mul(m, monomial), c * factor)
        return Polynomial(self.table, result)

    def map_coefficients(self, fn: Callable[[ParamPoly], ParamPoly]) -> "Polynomial":
        return Polynomial.from_terms(self.table, ((m, fn(c)) for m, c in self.terms.items()))

    def substitute_params(self, values: Dict[str, Scalar]) -> "Polynomial":
        """Instantiate formal parameters in coefficients and weight exponents."""
        rationals = {k: v for k, v in values.items() if not isinstance(v, GaussianRational)}
        items = []
        for (powers, weights), coefficient in self.terms.items():
            new_weights = tuple(
                (wid, exp.substitute(rationals)) for wid, exp in weights  # type: ignore[arg-type]
            )
            new_weights = tuple((wid, exp) for wid, exp in new_weights if not exp.is_zero())
            items.append(((powers, new_weights), coefficient.substitute(values)))
        return Polynomial.from_terms(self.table, items)

    def substitute_symbols(self, replace: Callable[[int], Optional["Polynomial"]]) -> "Polynomial":
        """Replace atomic symbols by polynomials; ``replace`` returns None to keep a symbol."""
        cache: Dict[Tuple[int, int], Optional[Polynomial]] = {}
        result: Dict[Monomial, ParamPoly] = {}
        for (powers, weights), coefficient in self.terms.items():
            kept: List[Tuple[int, int]] = []
            factor: Optional[Polynomial] = None
            for sid, exp in powers:
                if (sid, exp) not in cache:
                    image = cache[(sid, 1)] if (sid, 1) in cache else replace(sid)
                    cache[(sid, 1)] = image
                    cache[(sid, exp)] = None if image is None else image ** exp
                power = cache[(sid, exp)]
                if power is None:
                    kept.append((sid, exp))
                    continue
                factor = power if factor is None else factor * power
            monomial = (tuple(kept), weights)
            if factor is None:
                _accumulate(result, monomial, coefficient)
                continue
            for m, c in factor.terms.items():
                _accumulate(result, monomial_mul(m, monomial), c * coefficient)
        return Polynomial(self.table, result)

    def reduce_power(
        self, symbol: Union[str, int], degree: int, replacement: "Polynomial"
    ) -> "Polynomial":
        """Apply the relation ``symbol^degree = replacement``.

        Every power ``symbol^k`` becomes ``symbol^(k mod degree) · replacement^(k // degree)``.
        When ``replacement`` is free of ``symbol`` the result is the unique
        representative with ``symbol``-degree below ``degree``.
        """
        sid = symbol if isinstance(symbol, int) else self.table.symbol_id(symbol)
        powers_cache: Dict[int, Polynomial] = {}
        result: Dict[Monomial, ParamPoly] = {}
        for (powers, weights), coefficient in self.terms.items():
            exp = dict(powers).get(sid, 0)
            if exp < degree:
                _accumulate(result, (powers, weights), coefficient)
                continue
            k, remainder = divmod(exp, degree)
            stripped = tuple(
                (s, remainder if s == sid else e) for s, e in powers if s != sid or remainder
            )
            if k not in powers_cache:
                powers_cache[k] = replacement ** k
            for m, c in powers_cache[k].terms.items():
                _accumulate(result, monomial_mul(m, (stripped, weights)), c * coefficient)
        return Polynomial(self.table, result)

    def evaluate(
        self,
        symbols: Dict[str, Scalar],
        weights: Optional[Dict[str, Scalar]] = None,
        params: Optional[Dict[str, Scalar]] = None,
    ) -> GaussianRational:
        """Exact value at a point.

        Weight exponents must be integers once ``params`` are substituted.

        Raises:
            UnknownSymbolError: If a symbol or weight base has no value.
            ValueError: If a weight exponent is not an integer.
        """
        weights = weights or {}
        params = params or {}
        rationals = {k: v for k, v in params.items() if not isinstance(v, GaussianRational)}
        total = GaussianRational(0)
        for (powers, weight_part), coefficient in self.terms.items():
            value = coefficient.evaluate(params)
            for sid, exp in powers:
                name = self.table.name(sid)
                if name not in symbols:
                    raise UnknownSymbolError(f"No value for symbol {name!r}")
                value = value * GaussianRational.coerce(symbols[name]) ** exp
            for wid, exponent in weight_part:
                base = self.table.weight_name(wid)
                if base not in weights:
                    raise UnknownSymbolError(f"No value for weight {base!r}")
                exponent = exponent.substitute(rationals)  # type: ignore[arg-type]
                if not exponent.is_integer():
                    raise ValueError(f"weight {base}^({exponent}) has a non-integer exponent")
                value = value * GaussianRational.coerce(weights[base]) ** int(exponent.constant)
            total = total + value
        return total

    def weight_exponents(self, base: Union[str, int]) -> List[AffineExponent]:
        wid = base if isinstance(base, int) else self.table.weight_id(base)
        return sorted({_weight_exponent(weights, wid) for _, weights in self.terms})

    def symbol_ids(self) -> List[int]:
        return sorted({sid for powers, _ in self.terms for sid, _ in powers})

    def leading_term(self) -> Optional[Tuple[Monomial, ParamPoly]]:
        """The smallest term in monomial order, or None for the zero polynomial."""
        if not self.terms:
            return None
        key = min(self.terms, key=_sort_key)
        return key, self.terms[key]

    def monomial_str(self, monomial: Monomial) -> str:
        powers, weights = monomial
        parts = []
        for sid, exp in powers:
            name = self.table.name(sid)
            parts.append(name if exp == 1 else f"{name}^{exp}")
        for wid, exp in weights:
            parts.append(f"{self.table.weight_name(wid)}^({exp})")
        return "*".join(parts) if parts else "1"

    def term_str(self, monomial: Monomial, coefficient: ParamPoly) -> str:
        body = self.monomial_str(monomial)
        if coefficient == 1:
            return body
        shown = coefficient.constant_value() if coefficient.is_constant() else coefficient
        text = f"({shown})"
        if monomial == ONE_MONOMIAL:
            return text
        return f"{text}*{body}"

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(self.term_str(m, c) for m, c in self)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.table is other.table and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational, ParamPoly)):
            return self.terms == Polynomial.constant(self.table, other).terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]


def _accumulate(
    result: Dict[Monomial, ParamPoly], monomial: Monomial, coefficient: ParamPoly
) -> None:
    current = result.get(monomial)
    if current is None:
        if not coefficient.is_zero():
            result[monomial] = coefficient
        return
    total = current + coefficient
    if total.is_zero():
        del result[monomial]
    else:
        result[monomial] = total


def _weight_exponent(weights: Weights, wid: int) -> AffineExponent:
    for w, exponent in weights:
        if w == wid:
            return exponent
    return AffineExponent(Fraction(0), ())


def _sort_key(monomial: Monomial) -> tuple:
    powers, weights = monomial
    degree = sum(exp for _, exp in powers)
    return powers, degree, tuple((wid, exp.constant, exp.slopes) for wid, exp in weights)


Tree = Union[tuple, str, int, Fraction, GaussianRational, ParamPoly, Polynomial]


def poly_normalize(tree: Tree, table: SymbolTable) -> Polynomial:
    """Normalize a raw expression tree into a canonical polynomial.

    Trees are nested tuples ``("+", a, b, ...)``, ``("*", a, b, ...)``,
    ``("-", a)`` / ``("-", a, b)`` and ``("^", base, k)`` with ``k`` a
    non-negative integer. Leaves are registered symbol names, the parameter
    names ``m``, ``q``, ``theta``, exact scalars, or already-normal polynomials.

    Raises:
        UnknownSymbolError: If a leaf names neither a symbol nor a parameter.
        ValueError: For an unknown operator or a malformed node.
    """
    if isinstance(tree, Polynomial):
        if tree.table is not table:
            raise ValueError("polynomial leaf belongs to a different symbol table")
        return tree
    if isinstance(tree, str):
        if table.has_symbol(tree):
            return Polynomial.symbol(table, tree)
        if tree in PARAMETERS:
            return Polynomial.constant(table, ParamPoly.variable(tree))
        raise UnknownSymbolError(f"Unregistered symbol {tree!r}")
    if isinstance(tree, (int, Fraction, GaussianRational, ParamPoly)):
        return Polynomial.constant(table, tree)
    if not isinstance(tree, tuple) or not tree:
        raise ValueError(f"Malformed expression node {tree!r}")
    op, args = tree[0], tree[1:]
    if op == "+":
        result = Polynomial.zero(table)
        for arg in args:
            result = result + poly_normalize(arg, table)
        return result
    if op == "*":
        result = Polynomial.constant(table, 1)
        for arg in args:
            result = result * poly_normalize(arg, table)
        return result
    if op == "-":
        if len(args) == 1:
            return -poly_normalize(args[0], table)
        if len(args) == 2:
            return poly_normalize(args[0], table) - poly_normalize(args[1], table)
        raise ValueError("'-' takes one or two operands")
    if op == "^":
        if len(args) != 2 or not isinstance(args[1], int) or args[1] < 0:
            raise ValueError("'^' takes a base and a non-negative integer exponent")
        return poly_normalize(args[0], table) ** args[1]
    raise ValueError(f"Unknown operator {op!r}")


def rational_is_zero(
    num: Polynomial,
    denominators: Sequence[Polynomial] = (),
    reducer: Optional[Callable[[Polynomial], Polynomial]] = None,
) -> bool:
    """Decide whether ``num / Π denominators`` is zero.

    The denominator factors are nonzero by construction, so only the numerator
    matters. ``reducer`` rewrites abbreviations (such as a weight standing for a
    polynomial) before the test.
    """
    if reducer is not None:
        num = reducer(num)
    return num.is_zero()
