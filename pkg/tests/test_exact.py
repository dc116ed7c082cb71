"""Exact quadratic-field arithmetic used for radius budgets."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edgesep.exact import SqrtExpr, as_exact

SETTINGS = settings(max_examples=120, deadline=None, derandomize=True)


class TestBasics:
    def test_perfect_squares_collapse(self):
        assert SqrtExpr.sqrt(9) == 3
        assert SqrtExpr.sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert SqrtExpr.sqrt(9).b == 0

    def test_irrational_comparisons_are_exact(self):
        r = SqrtExpr.sqrt(2)
        assert 1 < r < 2
        assert not (r <= 1)
        assert r * 10**6 >= 1414213   # 10^6 * sqrt(2) = 1414213.56...
        assert r * 10**6 <= 1414214

    def test_arithmetic_stays_in_field(self):
        r = SqrtExpr.sqrt(5) - 1
        assert (r + 1) == SqrtExpr.sqrt(5)
        assert (r / 2) * 2 == r

    def test_floor_and_ceil(self):
        assert SqrtExpr.sqrt(2).floor() == 1
        assert SqrtExpr.sqrt(2).ceil() == 2
        assert SqrtExpr.sqrt(4).floor() == 2
        assert SqrtExpr.sqrt(4).ceil() == 2
        assert (SqrtExpr.sqrt(2) - 3).floor() == -2
        assert SqrtExpr(Fraction(7, 2)).floor() == 3

    def test_negative_radicand_rejected(self):
        with pytest.raises(ValueError):
            SqrtExpr(0, 1, -1)

    def test_mixed_field_comparison_rejected(self):
        with pytest.raises(ValueError, match="different fields"):
            _ = SqrtExpr.sqrt(2) < SqrtExpr.sqrt(3)

    def test_as_exact_accepts_floats_and_fractions(self):
        assert as_exact(2.5) == Fraction(5, 2)
        assert as_exact(Fraction(1, 3)) == Fraction(1, 3)
        assert as_exact(SqrtExpr.sqrt(2)) == SqrtExpr.sqrt(2)


class TestAgainstFloats:
    @SETTINGS
    @given(st.integers(0, 400), st.integers(1, 20), st.integers(-10, 10))
    def test_floor_matches_high_precision(self, num, den, shift):
        import math
        x = SqrtExpr(shift, 1, Fraction(num, den))
        f = x.floor()
        # f <= x < f + 1 by construction; cross-check the defining inequality
        val = shift + math.sqrt(num / den)
        assert f <= val + 1e-9 and val - 1e-9 <= f + 1

    @SETTINGS
    @given(st.integers(0, 100), st.integers(0, 100))
    def test_square_comparison(self, a, d):
        # a <= sqrt(d) iff a*a <= d for nonnegative a
        assert (SqrtExpr.sqrt(d) >= a) == (a * a <= d)
