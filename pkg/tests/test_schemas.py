from fractions import Fraction

import jsonschema
import pytest

from src.models.identity_report import IdentityReport
from src.models.monte_carlo import McConfig, McResult
from src.models.multipoly import MultiPoly


def mc_payload(**overrides):
    data = McResult("gen-bernoulli", McConfig(2, 2, 1, Fraction(7, 10)), 0.5, 0.01, Fraction(1, 3), 1.2).to_dict()
    data.update(overrides)
    return data


class TestMcResultSchema:
    def test_valid_result(self, schema_check):
        schema_check(mc_payload(), "mc_result.schema.json")

    @pytest.mark.parametrize("overrides", [
        {"exact": "0.333"},
        {"exact": "1/3x"},
        {"z_score": "nan"},
        {"z_score": None},
        {"family": "bernoulli"},
        {"std_error": -0.1},
        {"extra": 1},
    ])
    def test_rejects_malformed_fields(self, schema_check, overrides):
        with pytest.raises(jsonschema.ValidationError):
            schema_check(mc_payload(**overrides), "mc_result.schema.json")

    def test_rejects_decimal_base_point(self, schema_check):
        data = mc_payload()
        data["config"]["x0"] = "0.7"
        with pytest.raises(jsonschema.ValidationError):
            schema_check(data, "mc_result.schema.json")

    @pytest.mark.parametrize("z_score", ["inf", "-inf"])
    def test_infinite_z_scores(self, schema_check, z_score):
        schema_check(mc_payload(z_score=z_score), "mc_result.schema.json")


class TestIdentityReportSchema:
    def test_rejects_unknown_status(self, schema_check):
        data = IdentityReport("demo", (0, 2), {}).to_dict()
        data["status"] = "skipped"
        with pytest.raises(jsonschema.ValidationError):
            schema_check(data, "identity_report.schema.json")

    def test_rejects_short_range(self, schema_check):
        data = IdentityReport("demo", (0, 2), {1: MultiPoly.var("x")}).to_dict()
        data["n_range"] = [0]
        with pytest.raises(jsonschema.ValidationError):
            schema_check(data, "identity_report.schema.json")
