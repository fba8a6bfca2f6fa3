"""The CR jet calculus on ``H^n`` modulo the trace equation ``f_{αᾱ} + n g = 0``."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from crlab.algebra.gaussian import GaussianRational
from crlab.algebra.params import AffineExponent, ParamPoly
from crlab.algebra.polynomial import Monomial, Polynomial, SymbolTable, rational_is_zero
from crlab.jets.words import (
    T,
    IndexLetter,
    JetOrderError,
    Word,
    anti,
    bar,
    canonical_words,
    canonicalize_word,
    check_letter,
    word_name,
)

JetExpr = Polynomial

E_F = "e^f"
H = "h"
ETA = "eta"

_HALF = ParamPoly.constant(Fraction(1, 2))
_MINUS_HALF_I = ParamPoly.constant(GaussianRational(0, Fraction(-1, 2)))


@dataclass(frozen=True)
class FieldSpec:
    """A scalar field the engine differentiates.

    ``weight`` names the weight base carrying the field itself when the bare
    field value never occurs as a polynomial factor (``f`` lives only inside
    ``e^{wf}``, ``η`` only inside ``η^s``). A ``logarithmic`` field is the log
    of its weight base rather than the base itself.
    """

    name: str
    real: bool = True
    constrained: bool = False
    order_cap: int = 1
    weight: Optional[str] = None
    logarithmic: bool = False


DEFAULT_FIELDS: Tuple[FieldSpec, ...] = (
    FieldSpec("f", constrained=True, order_cap=3, weight=E_F, logarithmic=True),
    FieldSpec("phi", order_cap=1),
    FieldSpec("eta", order_cap=1, weight=ETA),
)


class CRContext:
    """Dimension, fields and rewriting rules of one jet calculus instance.

    The symbol table is filled during construction and frozen afterwards, so a
    context can be shared read-only. All rewriting results are memoized.

    Args:
        n: Complex dimension of ``H^n``.
        m: A rational value for the weight parameter ``m``; ``None`` keeps it formal.
        fields: Field registry; defaults to ``f`` (constrained, order 3), ``φ`` and ``η``.
    """

    def __init__(
        self,
        n: int,
        m: Optional[Union[int, Fraction]] = None,
        fields: Sequence[FieldSpec] = DEFAULT_FIELDS,
    ) -> None:
        if n < 1:
            raise ValueError("n must be a positive integer")
        self.n = n
        self.m_value: Optional[Fraction] = None if m is None else Fraction(m)
        self.fields: Dict[str, FieldSpec] = {spec.name: spec for spec in fields}
        if "f" not in self.fields:
            raise ValueError("the registry needs the constrained field 'f'")
        self.table = SymbolTable()
        self._symbol_words: Dict[int, Tuple[str, Word]] = {}
        for spec in fields:
            for length in range(spec.order_cap + 1):
                if length == 0 and spec.weight is not None:
                    continue
                for word in canonical_words(n, length):
                    sid = self.table.register(word_name(spec.name, word))
                    self._symbol_words[sid] = (spec.name, word)
        for spec in fields:
            if spec.weight is not None:
                self.table.register_weight(spec.weight)
        self.table.register_weight(H)
        self.table.freeze()

        self._expanded: Dict[Tuple[str, Word], Polynomial] = {}
        self._derived: Dict[Tuple[int, IndexLetter], Polynomial] = {}
        self._conjugates: Dict[int, Polynomial] = {}
        self._weight_derivatives: Dict[Tuple[int, IndexLetter], Polynomial] = {}
        self._eliminated_symbols = {
            sid
            for sid, (field, word) in self._symbol_words.items()
            if self.is_eliminable(field, word)
        }

        self._f0_id = self.table.symbol_id(word_name("f", (T,)))
        self.grad2 = self.add_all(self.jet("f", a) * self.jet("f", anti(a)) for a in self.alphas)
        self.e2f = self.weight(E_F, 2)
        self.f0 = self.jet("f", T)
        self.s = self.grad2 + self.e2f
        self.g = self.s - self.f0 * GaussianRational(0, 1)
        self.h_poly = self.s * self.s + self.f0 * self.f0

    # -- basic constructors -------------------------------------------------

    @property
    def alphas(self) -> range:
        return range(1, self.n + 1)

    @property
    def formal_m(self) -> bool:
        return self.m_value is None

    @property
    def m(self) -> ParamPoly:
        """``m`` as coefficient data."""
        if self.m_value is None:
            return ParamPoly.variable("m")
        return ParamPoly.constant(self.m_value)

    def exponent(
        self,
        constant: Union[int, Fraction] = 0,
        m: Union[int, Fraction] = 0,
        **slopes: Union[int, Fraction],
    ) -> AffineExponent:
        """``constant + m·(slope of m) + Σ slopes`` with ``m`` folded in when it is rational."""
        if self.m_value is not None:
            return AffineExponent.of(Fraction(constant) + Fraction(m) * self.m_value, **slopes)
        return AffineExponent.of(constant, m=m, **slopes)

    def zero(self) -> Polynomial:
        return Polynomial(self.table)

    def const(self, value: Union[int, Fraction, GaussianRational, ParamPoly]) -> Polynomial:
        return Polynomial.constant(self.table, value)

    def weight(self, base: str, exponent: Union[int, Fraction, AffineExponent]) -> Polynomial:
        if not isinstance(exponent, AffineExponent):
            exponent = AffineExponent.of(exponent)
        return Polynomial.weight(self.table, base, exponent)

    def symbol(self, field: str, *letters: IndexLetter) -> Polynomial:
        """The bare registered symbol of a canonical word, without elimination."""
        return Polynomial.symbol(self.table, word_name(field, tuple(letters)))

    def add_all(self, items: Iterable[Polynomial]) -> Polynomial:
        return Polynomial.sum_of(self.table, items)

    # -- words and elimination ----------------------------------------------

    def _check_word(self, field: str, word: Word) -> FieldSpec:
        try:
            spec = self.fields[field]
        except KeyError:
            raise KeyError(f"Unknown field {field!r}") from None
        for letter in word:
            check_letter(letter, self.n)
        if len(word) > spec.order_cap:
            raise JetOrderError(
                f"jet order overflow: {word_name(field, word)} exceeds order {spec.order_cap}"
            )
        return spec

    def is_eliminable(self, field: str, word: Word) -> bool:
        """True for the trace-rooted symbols ``f_{n n̄ w}`` removed by the trace equation."""
        spec = self.fields[field]
        return spec.constrained and self.n in word and -self.n in word

    def canonicalize_word(self, field: str, word: Sequence[IndexLetter]) -> Polynomial:
        """The derivative named by ``word`` as a sum of canonical symbols (no elimination)."""
        word = tuple(word)
        spec = self._check_word(field, word)
        result = self.zero()
        for canonical, coefficient in canonicalize_word(word):
            result = result + self._bare(spec, canonical) * coefficient
        return result

    def _bare(self, spec: FieldSpec, word: Word) -> Polynomial:
        if not word and spec.weight is not None:
            if spec.logarithmic:
                raise ValueError(f"{spec.name} occurs only through its weight {spec.weight}")
            return self.weight(spec.weight, 1)
        return Polynomial.symbol(self.table, word_name(spec.name, word))

    def jet(self, field: str, *letters: IndexLetter) -> Polynomial:
        """The normalized value of ``field`` differentiated along ``letters``."""
        word = tuple(letters)
        key = (field, word)
        if key in self._expanded:
            return self._expanded[key]
        spec = self._check_word(field, word)
        result = self.zero()
        for canonical, coefficient in canonicalize_word(word):
            result = result + self._canonical_value(spec, canonical) * coefficient
        self._expanded[key] = result
        return result

    def _canonical_value(self, spec: FieldSpec, word: Word) -> Polynomial:
        if not self.is_eliminable(spec.name, word):
            return self._bare(spec, word)
        key = (spec.name, word)
        if key in self._expanded:
            return self._expanded[key]
        value = self._eliminate(spec, word)
        self._expanded[key] = value
        return value

    def _eliminate(self, spec: FieldSpec, word: Word) -> Polynomial:
        # word = canonical(n, n̄, rest) minus the commutator corrections.
        rest = list(word)
        rest.remove(self.n)
        rest.remove(-self.n)
        reordered = (self.n, -self.n) + tuple(rest)
        corrections = self.zero()
        for canonical, coefficient in canonicalize_word(reordered):
            if canonical != word:
                corrections = corrections + self._canonical_value(spec, canonical) * coefficient
        value = self.g * (-self.n)
        for a in range(1, self.n):
            value = value - self.jet(spec.name, a, -a)
        for letter in rest:
            value = self.apply_derivation(value, letter)
        return value - corrections

    def eliminate_trace(self, e: Polynomial) -> Polynomial:
        """Replace every trace-rooted symbol by its value under the trace equation."""
        present = set(e.symbol_ids()) & self._eliminated_symbols
        if not present:
            return e

        def replace(sid: int) -> Optional[Polynomial]:
            if sid not in self._eliminated_symbols:
                return None
            field, word = self._symbol_words[sid]
            return self._canonical_value(self.fields[field], word)

        return e.substitute_symbols(replace)

    # -- derivations ----------------------------------------------------------

    def _derive_symbol(self, sid: int, letter: IndexLetter) -> Polynomial:
        key = (sid, letter)
        if key not in self._derived:
            field, word = self._symbol_words[sid]
            self._derived[key] = self.jet(field, *(word + (letter,)))
        return self._derived[key]

    def _derive_weight(self, wid: int, letter: IndexLetter) -> Polynomial:
        """``Z_letter`` of the weight base itself, as a polynomial."""
        key = (wid, letter)
        if key not in self._weight_derivatives:
            base = self.table.weight_name(wid)
            if base == H:
                value = self.apply_derivation(self.h_poly, letter)
            else:
                spec = next(spec for spec in self.fields.values() if spec.weight == base)
                value = self.jet(spec.name, letter)
                if spec.logarithmic:
                    value = value * self.weight(base, 1)
            self._weight_derivatives[key] = value
        return self._weight_derivatives[key]

    def apply_derivation(self, e: Polynomial, letter: IndexLetter) -> Polynomial:
        """Apply ``Z_α``, ``Z_ᾱ`` or ``∂_t`` with the Leibniz and power rules.

        Raises:
            JetOrderError: If a symbol would be differentiated past its field's cap.
        """
        check_letter(letter, self.n)
        pieces: List[Tuple[Polynomial, Monomial, ParamPoly]] = []
        for (powers, weights), coefficient in e.terms.items():
            for i, (sid, exp) in enumerate(powers):
                derivative = self._derive_symbol(sid, letter)
                if derivative.is_zero():
                    continue
                lowered = powers[:i] + (((sid, exp - 1),) if exp > 1 else ()) + powers[i + 1 :]
                pieces.append((derivative, (lowered, weights), coefficient * exp))
            for j, (wid, exponent) in enumerate(weights):
                derivative = self._derive_weight(wid, letter)
                if derivative.is_zero():
                    continue
                lowered_exponent = exponent.shift(-1)
                if lowered_exponent.is_zero():
                    new_weights = weights[:j] + weights[j + 1 :]
                else:
                    new_weights = weights[:j] + ((wid, lowered_exponent),) + weights[j + 1 :]
                pieces.append(
                    (derivative, (powers, new_weights), coefficient * exponent.to_param_poly())
                )
        return Polynomial.combine(self.table, pieces)

    def apply_word(self, e: Polynomial, letters: Iterable[IndexLetter]) -> Polynomial:
        for letter in letters:
            e = self.apply_derivation(e, letter)
        return e

    # -- conjugation and real parts -----------------------------------------

    def _conjugate_symbol(self, sid: int) -> Polynomial:
        if sid not in self._conjugates:
            field, word = self._symbol_words[sid]
            if not self.fields[field].real:
                raise ValueError(f"field {field!r} is not declared real")
            self._conjugates[sid] = self.jet(field, *(bar(letter) for letter in word))
        return self._conjugates[sid]

    def conjugate(self, e: Polynomial) -> Polynomial:
        """Complex conjugate of an expression in real fields; parameters stay fixed."""
        barred = e.map_coefficients(ParamPoly.conjugate)
        return barred.substitute_symbols(self._conjugate_symbol)

    def real_part(self, e: Polynomial) -> Polynomial:
        return (e + self.conjugate(e)).scale(_HALF)

    def imag_part(self, e: Polynomial) -> Polynomial:
        return (e - self.conjugate(e)).scale(_MINUS_HALF_I)

    def divergence(self, vector: Sequence[Polynomial]) -> Polynomial:
        """``Σ_α Z_ᾱ(V_α)``."""
        if len(vector) != self.n:
            raise ValueError(f"expected {self.n} components, got {len(vector)}")
        return self.add_all(self.apply_derivation(v, anti(a)) for a, v in zip(self.alphas, vector))

    def divergence_real(self, vector: Sequence[Polynomial]) -> Polynomial:
        """``Re Σ_α Z_ᾱ(V_α)``."""
        return self.real_part(self.divergence(vector))

    def divergence_imag(self, vector: Sequence[Polynomial]) -> Polynomial:
        """``Im Σ_α Z_ᾱ(V_α)``."""
        return self.imag_part(self.divergence(vector))

    # -- zero testing ---------------------------------------------------------

    def reduce(self, e: Polynomial) -> Polynomial:
        """Normal form modulo ``h = s² + f_0²``: every ``f_0²`` becomes ``h - s²``."""
        return e.reduce_power(self._f0_id, 2, self.weight(H, 1) - self.s * self.s)

    def is_zero(self, e: Polynomial, denominators: Sequence[Polynomial] = ()) -> bool:
        return rational_is_zero(e, denominators, self.reduce)

    def symbol_word(self, sid: int) -> Tuple[str, Word]:
        return self._symbol_words[sid]

    def substitute(
        self, e: Polynomial, values: Callable[[str, Word], Optional[Polynomial]]
    ) -> Polynomial:
        """Replace jet symbols by the polynomials ``values(field, word)`` returns (None keeps)."""
        return e.substitute_symbols(lambda sid: values(*self._symbol_words[sid]))
