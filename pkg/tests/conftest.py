"""
Shared fixtures: family services, golden Bernoulli numbers and validation
against the committed JSON schemas.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

import jsonschema
import pytest

from src.core.constants import FileConstants
from src.services.family_service import PolynomialFamilyService
from src.services.identity_service import IdentityService
from src.services.monte_carlo_service import MonteCarloService

ROOT = Path(__file__).resolve().parent.parent
SCHEMA_DIR = ROOT / FileConstants.SCHEMA_DIR

# B_k(0) for k = 0..32; odd k >= 3 vanish
GOLDEN_BERNOULLI = {
    0: Fraction(1),
    1: Fraction(-1, 2),
    2: Fraction(1, 6),
    4: Fraction(-1, 30),
    6: Fraction(1, 42),
    8: Fraction(-1, 30),
    10: Fraction(5, 66),
    12: Fraction(-691, 2730),
    14: Fraction(7, 6),
    16: Fraction(-3617, 510),
    18: Fraction(43867, 798),
    20: Fraction(-174611, 330),
    22: Fraction(854513, 138),
    24: Fraction(-236364091, 2730),
    26: Fraction(8553103, 6),
    28: Fraction(-23749461029, 870),
    30: Fraction(8615841276005, 14322),
    32: Fraction(-7709321041217, 510),
}
for _k in range(3, 33, 2):
    GOLDEN_BERNOULLI[_k] = Fraction(0)

# E_k(0) worked out by hand; even k >= 2 vanish
GOLDEN_EULER_AT_ZERO = {
    0: Fraction(1),
    1: Fraction(-1, 2),
    3: Fraction(1, 4),
    5: Fraction(-1, 2),
    7: Fraction(17, 8),
    9: Fraction(-31, 2),
    11: Fraction(691, 4),
}


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch, tmp_path):
    """Keep tests independent of a developer's .env and working directory"""
    for key in ("APPELL_NMAX", "MC_SAMPLES", "MC_SEED", "MC_Z_THRESHOLD", "MC_CHUNK_SIZE",
                "VERIFY_WORKERS", "ENABLE_DETAILED_LOGGING", "APP_NAME", "APP_VERSION"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("ENABLE_COLOR_OUTPUT", "false")
    monkeypatch.setenv("OUTPUT_DIRECTORY", str(tmp_path / "outputs"))


@pytest.fixture(scope="session")
def families() -> PolynomialFamilyService:
    return PolynomialFamilyService(truncation_order=24)


@pytest.fixture(scope="session")
def small_families() -> PolynomialFamilyService:
    return PolynomialFamilyService(truncation_order=10)


@pytest.fixture(scope="session")
def identity_service(families) -> IdentityService:
    return IdentityService(families)


@pytest.fixture
def mc_service(families) -> MonteCarloService:
    return MonteCarloService(families, chunk_size=4096)


def load_schema(name: str) -> Dict[str, Any]:
    with open(SCHEMA_DIR / name, encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture(scope="session")
def golden_bernoulli() -> Dict[int, Fraction]:
    return GOLDEN_BERNOULLI


@pytest.fixture(scope="session")
def golden_euler_at_zero() -> Dict[int, Fraction]:
    return GOLDEN_EULER_AT_ZERO


@pytest.fixture
def schema_check():
    """Callable asserting an instance matches a schema committed under schemas/"""
    def _check(instance: Any, schema_name: str) -> None:
        jsonschema.validate(instance=instance, schema=load_schema(schema_name))
    return _check
