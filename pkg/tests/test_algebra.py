"""Tests for Gaussian rationals, parameter polynomials and sparse polynomials."""

from fractions import Fraction

import pytest
from hypothesis import given

from crlab.algebra import (
    I,
    ONE,
    ZERO,
    AffineExponent,
    ExactDivisionError,
    GaussianRational,
    ParamPoly,
    Polynomial,
    SymbolTable,
    UnknownSymbolError,
    poly_normalize,
    rational_is_zero,
    to_fraction,
)
from tests.strategies import gaussians, nonzero_gaussians


class TestGaussianRational:
    @given(gaussians(), gaussians())
    def test_addition_commutes(self, a, b):
        assert a + b == b + a

    @given(gaussians(), gaussians(), gaussians())
    def test_multiplication_associates(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    @given(gaussians(), gaussians(), gaussians())
    def test_distributive(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(gaussians(), nonzero_gaussians)
    def test_division_inverts_multiplication(self, a, b):
        assert (a * b) / b == a

    @given(gaussians())
    def test_conjugate_product_is_abs2(self, a):
        assert a * a.conjugate() == a.abs2()

    def test_imaginary_unit_squares_to_minus_one(self):
        assert I * I == -1
        assert I**-1 == -I

    def test_division_by_zero_raises(self):
        with pytest.raises(ExactDivisionError):
            ONE / ZERO
        with pytest.raises(ZeroDivisionError):
            I / 0

    def test_floats_are_rejected(self):
        with pytest.raises(TypeError):
            to_fraction(0.5)
        with pytest.raises(TypeError):
            GaussianRational.coerce(0.5)  # type: ignore[arg-type]

    def test_string_parts(self):
        assert GaussianRational("3/4", "-2") == GaussianRational(Fraction(3, 4), -2)
        assert str(GaussianRational(1, -1)) == "1-i"
        assert str(GaussianRational(0, 2)) == "2i"

    def test_equal_values_hash_alike(self):
        assert hash(GaussianRational(3)) == hash(Fraction(3))
        assert {GaussianRational(1, 1): "x"}[GaussianRational(1, 1)] == "x"


class TestParamPoly:
    def test_zero_coefficients_are_dropped(self):
        m = ParamPoly.variable("m")
        assert (m - m).is_zero()
        assert (m * 0).is_zero()

    def test_substitute_and_evaluate(self):
        m = ParamPoly.variable("m")
        poly = m * m - 3 * m + 2
        assert poly.evaluate({"m": 1}) == 0
        assert poly.evaluate({"m": Fraction(1, 2)}) == Fraction(3, 4)

    def test_unknown_parameter(self):
        with pytest.raises(KeyError):
            ParamPoly.variable("k")

    def test_affine_exponents_add_and_cancel(self):
        a = AffineExponent.of(2, q=1)
        b = AffineExponent.of(-2, q=-1)
        assert (a + b).is_zero()
        assert a.substitute({"q": 1}).is_integer()
        assert not AffineExponent.of(Fraction(1, 2)).is_integer()


def _table(*names: str) -> SymbolTable:
    table = SymbolTable()
    for name in names:
        table.register(name)
    table.register_weight("e^f")
    return table


class TestPolynomial:
    def test_normalize_expands_and_collects(self):
        table = _table("x", "y")
        square = poly_normalize(("^", ("+", "x", "y"), 2), table)
        expanded = poly_normalize(
            ("+", ("*", "x", "x"), ("*", 2, "x", "y"), ("*", "y", "y")), table
        )
        assert square == expanded
        assert len(square) == 3

    def test_difference_of_equal_trees_is_zero(self):
        table = _table("x", "y")
        left = poly_normalize(("*", ("+", "x", "y"), ("-", "x", "y")), table)
        right = poly_normalize(("-", ("^", "x", 2), ("^", "y", 2)), table)
        assert (left - right).is_zero()
        assert rational_is_zero(left - right)

    def test_parameters_become_coefficients(self):
        table = _table("x")
        poly = poly_normalize(("*", "m", "x"), table)
        assert poly.substitute_params({"m": 0}).is_zero()
        assert poly.evaluate({"x": 3}, params={"m": 2}) == 6

    def test_weights_multiply_by_adding_exponents(self):
        table = _table("x")
        w = Polynomial.weight(table, "e^f", AffineExponent.of(1, q=1))
        w_inverse = Polynomial.weight(table, "e^f", AffineExponent.of(-1, q=-1))
        assert w * w_inverse == 1
        assert (w * w).evaluate({}, {"e^f": 2}, {"q": 1}) == 16

    def test_non_integer_weight_exponent_cannot_be_evaluated(self):
        table = _table()
        w = Polynomial.weight(table, "e^f", AffineExponent.of(Fraction(1, 2)))
        with pytest.raises(ValueError):
            w.evaluate({}, {"e^f": 4})

    def test_unknown_symbols(self):
        table = _table("x")
        with pytest.raises(UnknownSymbolError):
            poly_normalize(("+", "x", "z"), table)
        with pytest.raises(UnknownSymbolError):
            Polynomial.symbol(table, "x").evaluate({})

    def test_malformed_trees(self):
        table = _table("x")
        with pytest.raises(ValueError):
            poly_normalize(("^", "x", -1), table)
        with pytest.raises(ValueError):
            poly_normalize(("?", "x"), table)

    def test_frozen_table_rejects_registration(self):
        table = _table("x")
        table.freeze()
        assert table.register("x") == 0
        with pytest.raises(RuntimeError):
            table.register("y")

    def test_leading_term_is_deterministic(self):
        table = _table("x", "y")
        poly = poly_normalize(("+", ("^", "y", 2), ("*", 3, "x")), table)
        monomial, coefficient = poly.leading_term()  # type: ignore[misc]
        assert poly.term_str(monomial, coefficient) == "(3)*x"
        assert Polynomial.zero(table).leading_term() is None
