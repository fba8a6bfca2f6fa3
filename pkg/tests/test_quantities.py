"""Tests for the identity catalog, mutations, ψ, coefficient bounds and tensor chain."""

from fractions import Fraction

import numpy as np
import pytest

from crlab.algebra import GaussianRational
from crlab.jets import CRContext
from crlab.quantities import (
    COEFFICIENT_MUTATIONS,
    MUTATIONS,
    IdentityId,
    UnknownQuantityError,
    build_quantity,
    chain_values,
    coefficient_bounds_check,
    coefficients_exact,
    lower_bounds,
    psd_check_psi,
    psi_squares_check,
    tensor_identity_tests,
    verify_identity,
    verify_many,
)
from crlab.quantities.psi import psi_expanded_value, psi_first_value, psi_squares_value

FAST_IDENTITIES = [identity for identity in IdentityId if identity is not IdentityId.LEMMA1]


class TestIdentities:
    def test_lemma1_holds_for_n1_with_formal_m(self):
        report = verify_identity("lemma1", 1)
        assert report.status == "zero", report.witness
        assert report.mode == "formal"
        assert "c5-printed" in (report.note or "")
        assert report.elapsed is None

    @pytest.mark.parametrize("identity", FAST_IDENTITIES, ids=lambda i: i.value)
    def test_identity_holds_for_n1(self, identity):
        report = verify_identity(identity, 1)
        assert report.is_zero, report.witness
        assert report.to_check().status == "pass"

    @pytest.mark.slow
    @pytest.mark.parametrize("identity", list(IdentityId), ids=lambda i: i.value)
    def test_identity_holds_for_n2(self, identity):
        report = verify_identity(identity, 2)
        assert report.is_zero, report.witness

    @pytest.mark.slow
    @pytest.mark.parametrize("m", [Fraction(0), Fraction(1, 2), Fraction(1)])
    def test_lemma1_for_n3_with_rational_m(self, m):
        report = verify_identity(IdentityId.LEMMA1, 3, m)
        assert report.is_zero, report.witness
        assert report.mode == f"m={m}"

    def test_rational_m_matches_formal(self):
        assert verify_identity("jl", 1, Fraction(1, 3)).is_zero

    @pytest.mark.parametrize("mutation", ["c1+1", "c2+1", "c4+1"])
    def test_lemma1_mutation_is_detected_for_n1(self, mutation):
        report = verify_identity("lemma1", 1, mutation=mutation)
        assert report.status == "nonzero"
        assert report.witness
        assert report.to_check().status == "fail"

    @pytest.mark.slow
    @pytest.mark.parametrize("mutation", MUTATIONS[IdentityId.LEMMA1])
    def test_every_lemma1_mutation_is_detected_for_n2(self, mutation):
        report = verify_identity("lemma1", 2, mutation=mutation)
        assert report.status == "nonzero", mutation
        assert report.witness

    @pytest.mark.parametrize("mutation", COEFFICIENT_MUTATIONS)
    def test_psi_squares_mutation_is_detected(self, mutation):
        report = verify_identity("psi-squares", 1, mutation=mutation)
        assert report.status == "nonzero"
        assert report.witness

    def test_unsupported_mutation(self):
        with pytest.raises(ValueError):
            verify_identity("jl", 1, mutation="c1+1")
        with pytest.raises(ValueError):
            verify_identity("lemma1", 1, mutation="c7+1")

    def test_unknown_identity(self):
        with pytest.raises(ValueError):
            verify_identity("lemma9", 1)

    def test_timing_is_opt_in(self):
        assert verify_identity("trace-free", 1, record_timing=True).elapsed is not None

    def test_verify_many_keeps_order(self):
        names = ["trace-free", "jl", "psi-expanded"]
        reports = verify_many(names, 1)
        assert [r.identity for r in reports] == names
        assert all(r.is_zero for r in reports)

    def test_reports_are_reproducible(self):
        first = verify_identity("lemma1", 1, mutation="c1+1").model_dump_json()
        second = verify_identity("lemma1", 1, mutation="c1+1").model_dump_json()
        assert first == second


class TestCoefficients:
    def test_m_zero_values(self):
        c = coefficients_exact(Fraction(0), Fraction(2), Fraction(3))
        assert c["c1"] == 3
        assert c["c2"] == Fraction(1, 3)
        assert c["c3"] == Fraction(-1, 3)
        assert c["c4"] == Fraction(5, 3)
        assert c["c5"] == Fraction(4, 5)
        assert c["c6"] == Fraction(3, 5)

    def test_lower_bounds_at_zero(self):
        assert lower_bounds(Fraction(0)) == {"c1": 3, "c4": Fraction(5, 3), "c6": Fraction(3, 5)}

    def test_s_must_be_positive(self):
        with pytest.raises(ValueError):
            coefficients_exact(Fraction(1, 2), Fraction(1), Fraction(0))

    def test_bounds_hold_on_samples(self):
        report = coefficient_bounds_check(samples=2000, seed=3)
        assert report.passed, report.first_violation
        assert set(report.violations) == {"c1", "c4", "c6"}
        assert report.max_abs_sum

    @pytest.mark.slow
    def test_bounds_hold_on_full_sweep(self):
        assert coefficient_bounds_check(samples=100_000, seed=0).passed


class TestPsi:
    def test_symbolic_completion_of_squares(self):
        report = psi_squares_check("symbolic", length=1)
        assert report.passed
        assert report.symbolic is not None and report.symbolic.is_zero

    def test_numeric_completion_of_squares(self):
        report = psi_squares_check("numeric", length=2, samples=2000, seed=1)
        assert report.passed
        assert report.max_relative_error is not None and report.max_relative_error <= 1e-10

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            psi_squares_check("graphical")

    def test_three_forms_agree(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            m, f0, s = rng.uniform(0, 1), rng.uniform(-2, 2), rng.uniform(0.1, 2)
            D, E, G = (rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(3))
            expanded = psi_expanded_value(m, f0, s, D, E, G)
            close = pytest.approx(expanded, rel=1e-9, abs=1e-9)
            assert psi_first_value(m, f0, s, D, E, G) == close
            assert psi_squares_value(m, f0, s, D, E, G) == close

    def test_printed_c5_sign_breaks_the_squares(self):
        rng = np.random.default_rng(11)
        D, E, G = (rng.normal(size=1) + 1j * rng.normal(size=1) for _ in range(3))
        expanded = psi_expanded_value(0.5, 1.0, 1.0, D, E, G)
        printed = psi_squares_value(0.5, 1.0, 1.0, D, E, G, printed_sign=True)
        assert printed != pytest.approx(expanded, rel=1e-6)

    def test_m_zero_reduces_to_four_squares(self):
        rng = np.random.default_rng(5)
        D, E, G = (rng.normal(size=3) + 1j * rng.normal(size=3) for _ in range(3))
        squares = sum(np.sum(np.abs(v) ** 2) for v in (G, G + D, G - E, D + E))
        assert psi_expanded_value(0.0, 0.7, 1.3, D, E, G) == pytest.approx(squares)

    @pytest.mark.parametrize("m", [0.0, 0.5, 0.9])
    def test_positive_definite_below_one(self, m):
        report = psd_check_psi(m, samples=200, seed=2)
        assert report.passed
        assert report.worst_point is not None

    def test_m_outside_range(self):
        with pytest.raises(ValueError):
            psd_check_psi(1.0)


class TestTensorChain:
    def test_hand_example(self):
        one = GaussianRational(1)
        values = chain_values([[one]], [[one]], [one])
        assert values.direct == values.expanded == values.lower == 4

    @pytest.mark.parametrize("n", [2, 3])
    def test_random_samples(self, n):
        report = tensor_identity_tests(n, samples=300, seed=n)
        assert report.passed, report.first_failure

    @pytest.mark.slow
    @pytest.mark.parametrize("n", [2, 3])
    def test_full_sweep(self, n):
        assert tensor_identity_tests(n, samples=10_000, seed=0).passed

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            tensor_identity_tests(0, samples=10)


class TestCatalog:
    def test_scalars(self):
        ctx = CRContext(2)
        assert build_quantity("g", ctx) == ctx.g
        assert build_quantity("g_bar", ctx) == ctx.conjugate(ctx.g)
        assert build_quantity("s", ctx) == ctx.s

    def test_torsion(self):
        ctx = CRContext(2)
        torsion = build_quantity("D", ctx)
        assert sorted(torsion) == [(1, 1), (1, 2), (2, 1), (2, 2)]
        expected = ctx.jet("f", 1, 2) - ctx.jet("f", 1) * ctx.jet("f", 2) * 2
        assert torsion[(1, 2)] == expected

    def test_unknown_name(self):
        with pytest.raises(UnknownQuantityError, match="known: g"):
            build_quantity("torsion", CRContext(1))
