"""Tests for truncated Taylor arithmetic, CR jets and numeric residuals."""

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings

from crlab.algebra import GaussianRational
from crlab.closedform import HPoint, jets_at, make_solution
from crlab.numeric import (
    CoordinateSeries,
    DomainViolationError,
    Taylor,
    apply_letter,
    cr_jets,
    cr_jets_from_taylor,
    cr_tensors,
    fd_crosscheck,
    jet_table,
    multi_indices,
    numeric_residual,
    taylor_eval,
    yamabe_residual,
)
from crlab.parsing import parse_expression
from tests.strategies import nonzero_gaussians

# f for the standard solution at n = 1, where N = 4 and λ = i
STANDARD_F = "-log(t^2 + (x1^2 + y1^2 + 1)^2)/2"


class TestTaylor:
    def test_multi_indices(self):
        assert len(list(multi_indices(2, 2))) == 6
        assert len(list(multi_indices(3, 1))) == 4

    def test_cube_partials_float(self):
        x = Taylor.variable(0, 2, 1, 3, exact=False)
        cube = x**3
        assert cube.value == pytest.approx(8)
        assert [cube.partial((k,)) for k in (1, 2, 3)] == pytest.approx([12, 12, 6])

    def test_cube_partials_exact(self):
        x = Taylor.variable(0, 2, 1, 3, exact=True)
        cube = x**3
        assert cube.partial((1,)) == 12
        assert cube.partial((3,)) == 6
        assert cube.derivative(0).partial((1,)) == 12
        assert cube.derivative(0).order == 2

    def test_reciprocal(self):
        x = Taylor.variable(0, 2, 1, 2, exact=True)
        inverse = x.reciprocal()
        assert inverse.value == Fraction(1, 2)
        assert inverse.partial((1,)) == Fraction(-1, 4)
        assert inverse.partial((2,)) == Fraction(1, 4)

    def test_exact_log_drops_constant(self):
        x = Taylor.variable(0, 1, 1, 3, exact=True)
        log = x.log(drop_constant=True)
        assert log.value == 0
        assert [log.partial((k,)) for k in (1, 2, 3)] == [1, -1, 2]

    def test_float_functions(self):
        x = Taylor.variable(0, 4, 1, 2, exact=False)
        root = x.sqrt()
        assert root.value == pytest.approx(2)
        assert root.partial((1,)) == pytest.approx(0.25)
        assert root.partial((2,)) == pytest.approx(-1 / 32)
        e = Taylor.variable(0, 0, 1, 3, exact=False).exp()
        assert [e.partial((k,)) for k in range(4)] == pytest.approx([1, 1, 1, 1])
        log = x.log()
        assert log.value == pytest.approx(cmath.log(4))

    def test_mixed_partial(self):
        x = Taylor.variable(0, 1, 2, 2, exact=False)
        y = Taylor.variable(1, 3, 2, 2, exact=False)
        product = x * y
        assert product.partial((1, 1)) == pytest.approx(1)
        assert product.partial((1, 0)) == pytest.approx(3)
        assert product.partial((0, 2)) == pytest.approx(0)

    def test_conjugate(self):
        y = Taylor.variable(0, 1, 1, 1, exact=False)
        iy = y * 1j
        assert iy.conjugate().partial((1,)) == pytest.approx(-1j)

    @given(nonzero_gaussians)
    @settings(max_examples=25, deadline=None)
    def test_series_times_reciprocal_is_one(self, base):
        x = Taylor.variable(0, base, 1, 4, exact=True)
        square = x * x
        assert (square * square.reciprocal()).coeffs == {(0,): GaussianRational(1)}

    def test_errors(self):
        exact = Taylor.variable(0, 1, 1, 2, exact=True)
        floating = Taylor.variable(0, 1, 1, 2, exact=False)
        with pytest.raises(TypeError):
            Taylor.constant(0.5, 1, 2, exact=True)
        with pytest.raises(ValueError):
            exact.exp()
        with pytest.raises(ValueError):
            exact.log()
        with pytest.raises(ValueError):
            exact + floating
        with pytest.raises(ValueError):
            floating.partial((3,))
        with pytest.raises(ValueError):
            Taylor.variable(1, 0, 1, 2, exact=False)
        with pytest.raises(ZeroDivisionError):
            Taylor.variable(0, 0, 1, 2, exact=False).reciprocal()
        with pytest.raises(ZeroDivisionError):
            Taylor.variable(0, 0, 1, 2, exact=False).log()


class TestTaylorEval:
    def test_value_and_partials(self):
        tv = taylor_eval(parse_expression("t^2 + x1*y1"), [complex(1, 2)], 3)
        assert tv.value == pytest.approx(11)
        assert tv.derivative("t") == pytest.approx(6)
        assert tv.derivative("x1") == pytest.approx(2)
        assert tv.derivative("x1", "y1") == pytest.approx(1)
        assert tv.derivative("t", "t") == pytest.approx(2)
        assert tv.derivative("y1", "y1") == pytest.approx(0)

    def test_unknown_coordinate(self):
        tv = taylor_eval(parse_expression("x1"), [0j], 0)
        with pytest.raises(ValueError):
            tv.derivative("x2")

    def test_expression_beyond_dimension(self):
        with pytest.raises(ValueError):
            taylor_eval(parse_expression("x2"), [0j], 0)

    @pytest.mark.parametrize(
        "text, z, t",
        [
            ("log(x1)", -1, 0),
            ("sqrt(t)", 0, -1),
            ("1/x1", 0, 0),
            ("x1^-1", 0, 0),
            ("log(i)", 0, 0),
        ],
    )
    def test_domain_violations(self, text, z, t):
        with pytest.raises(DomainViolationError):
            taylor_eval(parse_expression(text), [complex(z)], t)

    def test_domain_violation_names_subexpression(self):
        with pytest.raises(DomainViolationError) as info:
            taylor_eval(parse_expression("log(x1 - 1)"), [0.5 + 0j], 0)
        assert info.value.subexpression == "(x1 - 1)"

    @pytest.mark.parametrize(
        "text, z, t",
        [
            ("exp(x1)*sqrt(t^2 + 1) + x1*y1*t", complex(0.3, -0.2), 0.4),
            (STANDARD_F, complex(0.5, 0.1), -0.7),
            ("abs2(x1 + i*y1)^2 / (1 + t^2)", complex(-0.4, 0.6), 1.1),
        ],
    )
    def test_finite_differences_agree(self, text, z, t):
        assert fd_crosscheck(parse_expression(text), [z], t) <= 1e-6


class TestCRJets:
    def test_single_letters(self):
        coords = CoordinateSeries([complex(0.3, 0.1)], 0.2, 1, exact=False)
        assert apply_letter(coords.x[0], 1, coords).value == pytest.approx(0.5)
        assert apply_letter(coords.t, 0, coords).value == pytest.approx(1)
        assert apply_letter(coords.t, 1, coords).value == pytest.approx(1j * complex(0.3, -0.1))
        with pytest.raises(ValueError):
            apply_letter(coords.t, 2, coords)

    def test_exact_commutator_defect_is_zero(self):
        coords = CoordinateSeries(
            [GaussianRational(Fraction(1, 2), 1)], Fraction(1, 3), 2, exact=True
        )
        series = coords.t * coords.x[0] * coords.y[0] + coords.abs2_z() * coords.t
        jets = cr_jets(series, coords, 2, canonical_only=False)
        assert jets.commutator_defect() == 0.0

    def test_literal_and_reduced_words_agree(self):
        tv = taylor_eval(parse_expression("exp(x1*t) + y1^3"), [complex(0.2, 0.7)], 0.5, order=2)
        literal = cr_jets_from_taylor(tv, 2, canonical_only=False)
        canonical = cr_jets_from_taylor(tv, 2)
        assert complex(canonical.jet(-1, 1)) == pytest.approx(complex(literal.jets[(-1, 1)]))
        scale = max(1.0, max(abs(complex(v)) for v in literal.jets.values()))
        assert literal.commutator_defect() / scale <= 1e-9

    def test_missing_jet(self):
        coords = CoordinateSeries([0j], 0.0, 1, exact=False)
        jets = cr_jets(coords.x[0], coords, 1)
        with pytest.raises(KeyError):
            jets.jet(1, -1)

    def test_order_too_low(self):
        coords = CoordinateSeries([0j], 0.0, 1, exact=False)
        with pytest.raises(ValueError):
            cr_jets(coords.x[0], coords, 2)

    def test_e2f_required(self):
        coords = CoordinateSeries([0j], 0.0, 2, exact=False)
        jets = cr_jets(coords.x[0] * coords.t, coords, 2)
        with pytest.raises(ValueError):
            cr_tensors(jets)
        with pytest.raises(ValueError):
            yamabe_residual(jets)

    def test_jet_table_names(self):
        tv = taylor_eval(parse_expression("x1*t"), [0j], 0, order=2)
        table = jet_table(cr_jets_from_taylor(tv, 2))
        assert "f_{1,1b}" in table
        assert "f_{0}" in table


class TestNumericResidual:
    def test_standard_solution_as_expression(self):
        result = numeric_residual(parse_expression(STANDARD_F), [complex(0.3, -0.2)], 0.7)
        assert abs(result.residual) <= 1e-9
        assert result.max_tensor() <= 1e-9

    def test_linear_function_is_not_a_solution(self):
        result = numeric_residual(parse_expression("x1"), [0j], 0.0)
        assert result.residual == pytest.approx(-1.25)

    def test_closed_form_agrees_with_exact_jets(self):
        sol = make_solution(
            2,
            [GaussianRational(Fraction(1, 2)), GaussianRational(0, Fraction(1, 3))],
            GaussianRational(Fraction(1, 5), 2),
        )
        p = HPoint.of([GaussianRational(Fraction(1, 2), -1), GaussianRational(Fraction(2, 3))], 1)
        exact = jets_at(sol, p)
        numeric = numeric_residual(sol, [complex(v) for v in p.z], float(p.t))
        words = [w for w in exact.jets if w]
        scale = max(abs(complex(exact.jets[w])) for w in words)
        for word in words:
            deviation = abs(complex(numeric.jets.jets[word]) - complex(exact.jets[word]))
            assert deviation <= 1e-9 * max(1.0, scale)
        assert abs(numeric.residual) <= 1e-9
        assert complex(numeric.jets.e2f) == pytest.approx(complex(exact.e2f))

    def test_mutated_coefficient_leaves_a_residual(self):
        sol = make_solution(1, [0], GaussianRational(0, 1))
        result = numeric_residual(sol, [complex(0.1, 0.2)], 0.3, e2f_coefficient=3)
        assert abs(result.residual) > 1e-3
