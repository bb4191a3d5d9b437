from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.core.exceptions import PolynomialParseError, VariableError
from src.models.multipoly import MultiPoly, Variable, parse_poly

x = MultiPoly.var("x")
y = MultiPoly.var("y")
m = MultiPoly.var("m")
l = MultiPoly.var("l")  # noqa: E741

B2 = x * x - x + Fraction(1, 6)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
exponents = st.tuples(*(st.integers(min_value=0, max_value=3) for _ in range(4)))
polynomials = st.dictionaries(exponents, rationals, max_size=6).map(MultiPoly)


class TestArithmetic:
    def test_cancellation(self):
        assert (x - Fraction(1, 2)) + Fraction(1, 2) == x

    def test_square(self):
        half = x - Fraction(1, 2)
        assert half * half == x * x - x + Fraction(1, 4)

    def test_zero_annihilates(self):
        assert (MultiPoly.zero() * B2).is_zero()
        assert (B2 * 0).is_zero()

    def test_canonical_form_drops_zero_terms(self):
        p = MultiPoly({(0, 0, 1, 0): 1, (0, 0, 0, 0): 0})
        assert dict(p.terms) == {(0, 0, 1, 0): Fraction(1)}
        assert (x - x).terms == {}

    def test_equality_with_scalars(self):
        assert MultiPoly.constant(Fraction(1, 6)) == Fraction(1, 6)
        assert MultiPoly.one() == 1
        assert MultiPoly.zero() == 0

    def test_power_and_division(self):
        assert (x + 1) ** 2 == x * x + 2 * x + 1
        assert (x + 1) ** 0 == 1
        assert (2 * x) / 4 == x.scale(Fraction(1, 2))
        with pytest.raises(ZeroDivisionError):
            x / 0

    def test_rejects_bad_exponent_vector(self):
        with pytest.raises(VariableError):
            MultiPoly({(0, 0, 1): 1})

    @given(polynomials, polynomials, polynomials)
    @settings(max_examples=40, deadline=None)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == 0


class TestInspection:
    def test_degrees_and_coefficients(self):
        p = m * x * x + 3 * x - l
        assert p.degree(Variable.X) == 2
        assert p.degree("y") == 0
        assert MultiPoly.zero().degree("y") == -1
        assert MultiPoly.zero().total_degree() == -1
        assert p.total_degree() == 3
        assert p.coefficient("x", 2) == m
        assert p.coefficient("x", 0) == -l
        assert p.leading_coefficient("x") == m
        assert p.variables() == {Variable.M, Variable.L, Variable.X}

    def test_constant_value(self):
        assert MultiPoly.constant(Fraction(-1, 30)).constant_value() == Fraction(-1, 30)
        with pytest.raises(VariableError):
            x.constant_value()

    def test_unknown_variable(self):
        with pytest.raises(VariableError):
            MultiPoly.var("z")


class TestShift:
    def test_binomial_shift(self):
        assert (x * x).shift("x", 1) == x * x + 2 * x + 1

    def test_shift_bernoulli_two(self):
        assert B2.shift(Variable.X, 1) == x * x + x + Fraction(1, 6)

    def test_zero_shift_is_identity(self):
        assert B2.shift("x", 0) == B2

    def test_shift_by_polynomial(self):
        assert (x * x).shift("x", y) == x * x + 2 * x * y + y * y

    def test_delta_containing_variable_rejected(self):
        with pytest.raises(VariableError):
            B2.shift("x", x + 1)

    @given(polynomials, rationals)
    @settings(max_examples=40, deadline=None)
    def test_shift_inverse(self, p, delta):
        assert p.shift("x", delta).shift("x", -delta) == p


class TestEvaluation:
    def test_full_binding(self):
        assert B2.evaluate({"x": 0}) == Fraction(1, 6)

    def test_partial_binding(self):
        p = x - (m + l) / 2
        assert p.evaluate({Variable.M: 1, Variable.L: 1}) == x - 1

    def test_empty_binding(self):
        assert B2.evaluate({}) == B2

    def test_substitute_half_argument(self):
        assert B2.substitute("x", x / 2) == x * x / 4 - x / 2 + Fraction(1, 6)


class TestCalculus:
    def test_derivative(self):
        assert B2.derivative("x") == 2 * x - 1
        assert MultiPoly.constant(7).derivative("x").is_zero()
        assert (m * m * x).derivative("m") == 2 * m * x

    def test_integrate_unit(self):
        t = MultiPoly.var("y")
        assert (x + t - Fraction(1, 2)).integrate_unit("y") == x
        assert MultiPoly.one().integrate_unit("y") == 1
        shifted = (x + t) * (x + t) - (x + t) + Fraction(1, 6)
        assert shifted.integrate_unit("y") == x * x

    @given(polynomials)
    @settings(max_examples=40, deadline=None)
    def test_antiderivative_then_derivative(self, p):
        assert p.antiderivative("x").derivative("x") == p

    @given(polynomials)
    @settings(max_examples=40, deadline=None)
    def test_unit_integral_matches_antiderivative(self, p):
        primitive = p.antiderivative("y")
        assert p.integrate_unit("y") == primitive.evaluate({"y": 1}) - primitive.evaluate({"y": 0})


class TestTextFormat:
    def test_bernoulli_two(self):
        assert B2.to_text() == "x^2 - x + 1/6"

    def test_zero(self):
        assert MultiPoly.zero().to_text() == "0"

    def test_argument_before_orders(self):
        assert (x - m / 2 - l / 2).to_text() == "x - 1/2*m - 1/2*l"

    def test_graded_order(self):
        p = x * x - m * x + m * m / 4 - m / 12
        assert str(p) == "x^2 - m*x + 1/4*m^2 - 1/12*m"

    def test_leading_negative(self):
        assert (-m / 2).to_text() == "-1/2*m"
        assert repr(-x) == "MultiPoly('-x')"

    def test_parse(self):
        assert parse_poly("x^2 - x + 1/6") == B2
        assert parse_poly("x - 1/2*m - 1/2*l") == x - m / 2 - l / 2
        assert parse_poly("0") == 0

    @pytest.mark.parametrize("text", ["", "x^", "2x", "1/0", "x + + 1", "z"])
    def test_parse_errors(self, text):
        with pytest.raises(PolynomialParseError):
            parse_poly(text)

    @given(polynomials)
    @settings(max_examples=60, deadline=None)
    def test_round_trip(self, p):
        assert parse_poly(p.to_text()) == p
