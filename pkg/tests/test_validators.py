from fractions import Fraction

import pytest

from src.core.constants import FamilyKind, OutputFormat
from src.core.exceptions import ValidationError
from src.utils.validators import FileValidator, InputValidator


class TestParseRational:
    @pytest.mark.parametrize("text, expected", [
        ("7/3", Fraction(7, 3)),
        ("-1/2", Fraction(-1, 2)),
        ("+4", Fraction(4)),
        (" 6/4 ", Fraction(3, 2)),
        ("0", Fraction(0)),
    ])
    def test_valid(self, text, expected):
        assert InputValidator.parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["0.5", "1/", "a", "", "1/2/3", "1e3"])
    def test_invalid(self, text):
        with pytest.raises(ValidationError):
            InputValidator.parse_rational(text, "m")

    def test_zero_denominator(self):
        with pytest.raises(ValidationError) as info:
            InputValidator.parse_rational("3/0", "x")
        assert info.value.field_name == "x"

    def test_passthrough(self):
        assert InputValidator.parse_rational(Fraction(1, 3)) == Fraction(1, 3)
        assert InputValidator.parse_rational(2) == 2


class TestDegrees:
    def test_valid(self):
        assert InputValidator.validate_degree(0) == 0
        assert InputValidator.validate_degree(12, maximum=12) == 12

    @pytest.mark.parametrize("value", [-1, 1.5, True])
    def test_invalid(self, value):
        with pytest.raises(ValidationError):
            InputValidator.validate_degree(value)

    def test_above_maximum(self):
        with pytest.raises(ValidationError):
            InputValidator.validate_degree(13, maximum=12)


class TestOrderBindings:
    def test_mixed_both_orders(self):
        family_id = InputValidator.validate_order_bindings("mixed", "1/2", "3")
        assert family_id.kind is FamilyKind.MIXED
        assert family_id.m == Fraction(1, 2)
        assert family_id.l == 3

    def test_symbolic(self):
        assert InputValidator.validate_order_bindings("gen-euler").is_symbolic

    @pytest.mark.parametrize("kind, m, l", [
        ("bernoulli", "1", None),
        ("euler", None, "1"),
        ("gen-bernoulli", None, "2"),
        ("legendre", None, None),
    ])
    def test_rejected(self, kind, m, l):  # noqa: E741
        with pytest.raises(ValidationError):
            InputValidator.validate_order_bindings(kind, m, l)


class TestOutputFormat:
    def test_csv_only_for_tables(self):
        assert InputValidator.validate_output_format("csv", tabular=True) is OutputFormat.CSV
        with pytest.raises(ValidationError):
            InputValidator.validate_output_format("csv", tabular=False)

    def test_unknown(self):
        with pytest.raises(ValidationError):
            InputValidator.validate_output_format("yaml", tabular=True)


class TestOutputPath:
    def test_creates_parent(self, tmp_path):
        target = tmp_path / "nested" / "table.csv"
        assert FileValidator.validate_output_path(target) == target
        assert target.parent.is_dir()

    def test_suffix(self, tmp_path):
        with pytest.raises(ValidationError):
            FileValidator.validate_output_path(tmp_path / "table.xlsx")
