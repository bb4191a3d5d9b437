from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.core.constants import FamilyKind
from src.core.exceptions import PreconditionError, TruncationError, VariableError
from src.models.appell_family import AppellFamily
from src.models.multipoly import MultiPoly, Variable
from src.models.power_series import PowerSeries
from src.services.appell_engine import (
    expect_bernoulli_shift, expect_uniform_shift, family_convolve, family_from_series, family_member,
    iterate_expectation, series_member, trivial_family
)
from src.services.family_service import bernoulli_reciprocal, uniform_reciprocal

x = MultiPoly.var("x")
y = MultiPoly.var("y")
m = MultiPoly.var("m")

coefficients = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=1, max_size=5)


def poly_in_x(values):
    return sum((MultiPoly.var("x", k).scale(v) for k, v in enumerate(values)), MultiPoly.zero())


@pytest.fixture(scope="module")
def bernoulli_family():
    return family_from_series(uniform_reciprocal(10), Variable.X, "bernoulli")


@pytest.fixture(scope="module")
def euler_family():
    return family_from_series(bernoulli_reciprocal(10), Variable.X, "euler")


class TestFamilyFromSeries:
    def test_bernoulli_first_member(self, bernoulli_family):
        assert bernoulli_family.member(1) == x - Fraction(1, 2)
        assert bernoulli_family.member(2) == x * x - x + Fraction(1, 6)

    def test_trivial_series_gives_powers(self):
        family = family_from_series(PowerSeries.one(5), "x", "zero")
        for n in range(6):
            assert family.member(n) == MultiPoly.var("x", n)

    def test_euler_members(self, euler_family):
        assert euler_family.member(2) == x * x - x
        assert euler_family.member(3) == x ** 3 - (x * x).scale(Fraction(3, 2)) + Fraction(1, 4)

    def test_member_zero_is_one(self, bernoulli_family, euler_family):
        assert bernoulli_family.member(0) == 1
        assert euler_family.member(0) == 1

    def test_constant_term_must_be_one(self):
        with pytest.raises(PreconditionError):
            family_from_series(PowerSeries.from_rationals([2, 1]), "x", "bad")

    def test_out_of_range_member(self, bernoulli_family):
        with pytest.raises(TruncationError):
            bernoulli_family.member(11)
        with pytest.raises(TruncationError):
            bernoulli_family.member(-1)

    def test_argument_must_be_x_or_y(self):
        with pytest.raises(VariableError):
            AppellFamily([1], "m", "bad")

    def test_base_must_not_contain_argument(self):
        with pytest.raises(VariableError):
            AppellFamily([1, x], "x", "bad")

    def test_monic_and_derivative_recursion(self, bernoulli_family, euler_family):
        for family in (bernoulli_family, euler_family):
            for n in range(1, 11):
                member = family.member(n)
                assert member.degree("x") == n
                assert member.leading_coefficient("x") == 1
                assert member.derivative("x") == family.member(n - 1).scale(n)

    def test_family_member(self, bernoulli_family, euler_family):
        assert family_member(bernoulli_family, 2) == x * x - x + Fraction(1, 6)
        assert family_member(euler_family, 3) == x ** 3 - (x * x).scale(Fraction(3, 2)) + Fraction(1, 4)
        assert family_member(euler_family, 0) == 1
        with pytest.raises(TruncationError):
            family_member(bernoulli_family, 11)

    def test_series_member_agrees_with_binomial_form(self, bernoulli_family):
        for n in range(11):
            assert series_member(uniform_reciprocal(10), n) == bernoulli_family.member(n)

    def test_series_member_out_of_range(self):
        with pytest.raises(TruncationError):
            series_member(uniform_reciprocal(3), 4)

    def test_memo_returns_equal_values(self, bernoulli_family):
        assert bernoulli_family.member(7) is bernoulli_family.member(7)

    def test_shifted_and_specialized(self):
        family = AppellFamily([1, -m / 2], "x", "gen")
        lowered = family.shifted({"m": -1})
        assert lowered.member(1) == x - (m - 1) / 2
        assert family.specialized({"m": 2}).member(1) == x - 1
        assert family.with_argument("y").member(1) == y - m / 2


class TestExpectations:
    def test_uniform_mean_value(self, bernoulli_family):
        for n in range(7):
            assert expect_uniform_shift(bernoulli_family.member(n)) == MultiPoly.var("x", n)

    def test_bernoulli_mean_value(self, euler_family):
        for n in range(7):
            assert expect_bernoulli_shift(euler_family.member(n)) == MultiPoly.var("x", n)

    def test_constants_are_fixed(self):
        assert expect_uniform_shift(MultiPoly.one()) == 1
        assert expect_bernoulli_shift(MultiPoly.one()) == 1

    def test_order_zero_member_is_not_fixed(self, families):
        power = families.gen_bernoulli(2).evaluate({"m": 0})
        assert power == x * x
        assert expect_uniform_shift(power) - power == x + Fraction(1, 3)
        assert expect_bernoulli_shift(power) - power == x + Fraction(1, 2)

    def test_euler_one(self):
        assert expect_bernoulli_shift(x - Fraction(1, 2)) == x

    def test_generalized_reduction(self, families):
        b2 = families.gen_bernoulli(2)
        lowered = families.family(FamilyKind.GEN_BERNOULLI, shifts={Variable.M: -1}).member(2)
        assert expect_uniform_shift(b2) == lowered

        e2 = families.gen_euler(2)
        lowered = families.family(FamilyKind.GEN_EULER, shifts={Variable.M: -1}).member(2)
        assert expect_bernoulli_shift(e2) == lowered

    def test_iterate_expectation(self, families):
        b3 = families.gen_bernoulli(3)
        reduced = families.family(FamilyKind.GEN_BERNOULLI, shifts={"m": -2}).member(3)
        assert iterate_expectation(b3, 2, uniform=True) == reduced

    @given(coefficients, coefficients, st.fractions(min_value=-3, max_value=3, max_denominator=4))
    @settings(max_examples=30, deadline=None)
    def test_linearity(self, a_values, b_values, scalar):
        a, b = poly_in_x(a_values), poly_in_x(b_values)
        for operator in (expect_uniform_shift, expect_bernoulli_shift):
            assert operator(a + b.scale(scalar)) == operator(a) + operator(b).scale(scalar)


class TestConvolution:
    def test_bernoulli_with_bernoulli(self, bernoulli_family):
        other = bernoulli_family.with_argument("y")
        assert family_convolve(bernoulli_family, other, 1) == x + y - 1

    def test_with_trivial_family_is_shift(self, bernoulli_family):
        trivial = trivial_family("y", 10)
        for n in range(6):
            assert family_convolve(bernoulli_family, trivial, n) == bernoulli_family.member(n).shift("x", y)

    def test_mixed_from_convolution(self, families, bernoulli_family, euler_family):
        conv = family_convolve(bernoulli_family, euler_family.with_argument("y"), 4)
        expected = families.mixed_q(4).evaluate({"m": 1, "l": 1})
        assert conv.evaluate({"y": 0}) == expected

    def test_same_argument_rejected(self, bernoulli_family, euler_family):
        with pytest.raises(VariableError):
            family_convolve(bernoulli_family, euler_family, 2)
