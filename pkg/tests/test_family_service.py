from fractions import Fraction

import pytest

from src.core.constants import FamilyKind
from src.core.exceptions import ConfigurationError, PreconditionError, TruncationError, ValidationError, VariableError
from src.models.family_id import FamilyId
from src.models.multipoly import MultiPoly, Variable
from src.services import family_service as fs

x = MultiPoly.var("x")
m = MultiPoly.var("m")
l = MultiPoly.var("l")  # noqa: E741


class TestClassical:
    def test_bernoulli_members(self, families):
        assert families.bernoulli(0) == 1
        assert families.bernoulli(1) == x - Fraction(1, 2)
        assert families.bernoulli(4).evaluate({"x": 0}) == Fraction(-1, 30)

    def test_euler_members(self, families):
        assert families.euler(0) == 1
        assert families.euler(1) == x - Fraction(1, 2)
        assert families.euler(2) == x * x - x

    def test_bernoulli_numbers(self, families, golden_bernoulli):
        for k, value in golden_bernoulli.items():
            assert families.bernoulli_number(k) == value, k

    def test_euler_values_at_zero(self, families, golden_euler_at_zero):
        for k, value in golden_euler_at_zero.items():
            assert families.euler_member_at_zero(k) == value, k
        for k in range(2, 25, 2):
            assert families.euler_member_at_zero(k) == 0

    def test_euler_from_bernoulli_numbers(self, families):
        for k in range(1, 31):
            expected = -2 * (2 ** (k + 1) - 1) * families.bernoulli_number(k + 1) / (k + 1)
            assert families.euler_member_at_zero(k) == expected, k

    def test_numbers_beyond_truncation(self, small_families, golden_bernoulli):
        assert small_families.bernoulli_number(32) == golden_bernoulli[32]

    def test_negative_index(self, families):
        with pytest.raises(PreconditionError):
            families.bernoulli_number(-1)

    def test_golden_table(self, families, golden_bernoulli):
        rows = families.golden_table(32)
        assert len(rows) == 33
        assert all(b == golden_bernoulli[k] for k, b, _ in rows)
        assert rows[1] == (1, Fraction(-1, 2), Fraction(-1, 2))


class TestGeneralized:
    def test_gen_bernoulli_low_members(self, families):
        assert families.gen_bernoulli(1) == x - m / 2
        assert families.gen_bernoulli(2) == x * x - m * x + m * m / 4 - m / 12

    def test_gen_euler_low_members(self, families):
        assert families.gen_euler(1) == x - m / 2
        assert families.gen_euler(2) == x * x - m * x + m * m / 4 - m / 4

    @pytest.mark.parametrize("n", [0, 3, 7])
    def test_order_zero_is_power(self, families, n):
        for p in (families.gen_bernoulli(n), families.gen_euler(n)):
            assert families.specialize_order(p, {"m": 0}) == MultiPoly.var("x", n)

    @pytest.mark.parametrize("n", range(9))
    def test_order_one_is_classical(self, families, n):
        assert fs.specialize_order(families.gen_bernoulli(n), {"m": 1}) == families.bernoulli(n)
        assert fs.specialize_order(families.gen_euler(n), {"m": 1}) == families.euler(n)

    @pytest.mark.parametrize("kind", [FamilyKind.GEN_BERNOULLI, FamilyKind.GEN_EULER])
    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_integer_order_matches_products(self, families, kind, j):
        oracle = families.integer_order_family(kind, j)
        symbolic = families.family(kind)
        for n in range(11):
            assert symbolic.member(n).evaluate({"m": j}) == oracle.member(n), n

    def test_order_in_l(self, families):
        assert families.gen_euler(1, order="l") == x - l / 2

    def test_specialize_rejects_argument(self, families):
        with pytest.raises(VariableError):
            families.specialize_order(families.gen_bernoulli(2), {"x": 1})

    def test_bad_order_variable(self, families):
        with pytest.raises(VariableError):
            families.family(FamilyKind.GEN_BERNOULLI, order="x")


class TestMixed:
    def test_first_member(self, families):
        assert families.mixed_q(1) == x - m / 2 - l / 2
        assert families.mixed_q(1).to_text() == "x - 1/2*m - 1/2*l"

    def test_unit_orders(self, families):
        assert families.mixed_q(1).evaluate({"m": 1, "l": 1}) == x - 1

    def test_l_zero_is_gen_bernoulli(self, families):
        for n in range(8):
            assert families.mixed_q(n).evaluate({"l": 0}) == families.gen_bernoulli(n)

    def test_m_zero_is_gen_euler_in_l(self, families):
        for n in range(8):
            assert families.mixed_q(n).evaluate({"m": 0}) == families.gen_euler(n, order="l")

    @pytest.mark.parametrize("m_int, l_int", [(a, b) for a in range(3) for b in range(3)] + [(2, 3)])
    def test_integer_orders(self, families, m_int, l_int):
        oracle = families.integer_order_family(FamilyKind.MIXED, m_int, l_int)
        for n in range(11):
            assert families.mixed_q(n).evaluate({"m": m_int, "l": l_int}) == oracle.member(n), n

    def test_integer_order_family_guards(self, families):
        with pytest.raises(PreconditionError):
            families.integer_order_family(FamilyKind.GEN_BERNOULLI, 2, 1)
        with pytest.raises(PreconditionError):
            families.integer_order_family(FamilyKind.MIXED, -1)


class TestFamilyIds:
    def test_member_with_binding(self, families):
        family_id = FamilyId(FamilyKind.GEN_EULER, m=Fraction(7, 3))
        assert families.member(family_id, 0) == 1
        assert families.member(family_id, 1) == x - Fraction(7, 6)

    def test_family_for_specialises(self, families):
        family = families.family_for(FamilyId(FamilyKind.MIXED, m=1, l=1))
        assert family.member(1) == x - 1

    def test_classical_takes_no_order(self):
        with pytest.raises(ValidationError):
            FamilyId(FamilyKind.BERNOULLI, m=1)

    def test_generalized_takes_only_m(self):
        with pytest.raises(ValidationError):
            FamilyId(FamilyKind.GEN_BERNOULLI, l=1)

    def test_label_and_symbolic(self):
        family_id = FamilyId("mixed", m=Fraction(1, 2))
        assert family_id.is_symbolic
        assert family_id.label == "mixed[m=1/2]"
        assert not FamilyId("bernoulli").is_symbolic


class TestTruncation:
    def test_member_beyond_truncation(self, small_families):
        with pytest.raises(TruncationError):
            small_families.bernoulli(11)

    def test_appell_nmax_from_environment(self, monkeypatch):
        monkeypatch.setenv("APPELL_NMAX", "6")
        service = fs.create_family_service()
        assert service.truncation_order == 6
        with pytest.raises(TruncationError):
            service.gen_bernoulli(7)

    def test_default_service_follows_environment(self, monkeypatch):
        monkeypatch.setenv("APPELL_NMAX", "5")
        assert fs.default_service().truncation_order == 5
        assert fs.bernoulli(2) == x * x - x + Fraction(1, 6)

    def test_explicit_zero_truncation_is_kept(self, monkeypatch):
        monkeypatch.setenv("APPELL_NMAX", "6")
        service = fs.PolynomialFamilyService(truncation_order=0)
        assert service.truncation_order == 0
        assert service.bernoulli(0) == 1
        with pytest.raises(TruncationError):
            service.bernoulli(1)

    def test_negative_truncation(self):
        with pytest.raises(ValidationError):
            fs.PolynomialFamilyService(truncation_order=-1)

    def test_invalid_appell_nmax(self, monkeypatch):
        monkeypatch.setenv("APPELL_NMAX", "zero")
        with pytest.raises(ConfigurationError):
            fs.create_family_service()
