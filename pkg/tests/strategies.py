"""Hypothesis strategies shared by the test-suite."""

from fractions import Fraction

from hypothesis import strategies as st

from crlab.algebra import GaussianRational

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
positive_fractions = st.fractions(min_value=Fraction(1, 12), max_value=20, max_denominator=12)


@st.composite
def gaussians(draw: st.DrawFn) -> GaussianRational:
    return GaussianRational(draw(small_fractions), draw(small_fractions))


nonzero_gaussians = gaussians().filter(lambda g: not g.is_zero())
