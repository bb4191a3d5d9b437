"""
Data Models for the Monte-Carlo oracle
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict

from ..core.constants import MonteCarloConstants
from ..core.exceptions import PreconditionError, ValidationError


@dataclass(frozen=True)
class McConfig:
    """
    One Monte-Carlo experiment: E[Q_n^{(m)}(x0 + S_l)] against Q_n^{(m-l)}(x0),
    where S_l sums shift_count independent variates.
    """
    n: int
    m_int: int
    shift_count: int
    x0: Fraction = Fraction(0)
    samples: int = MonteCarloConstants.DEFAULT_SAMPLES
    seed: int = MonteCarloConstants.DEFAULT_SEED

    def __post_init__(self):
        object.__setattr__(self, "x0", Fraction(self.x0))
        if self.samples < 1:
            raise ValidationError(f"samples must be positive, got {self.samples}",
                                  field_name="samples", invalid_value=self.samples)
        if not 0 <= self.seed <= MonteCarloConstants.MAX_SEED:
            raise ValidationError(f"seed must be a 64-bit unsigned integer, got {self.seed}",
                                  field_name="seed", invalid_value=self.seed)
        if self.n < 0:
            raise ValidationError(f"n must be nonnegative, got {self.n}",
                                  field_name="n", invalid_value=self.n)
        if self.m_int < 0:
            raise ValidationError(f"m must be a nonnegative integer, got {self.m_int}",
                                  field_name="m", invalid_value=self.m_int)
        if self.shift_count < 0:
            raise ValidationError(f"l must be a nonnegative integer, got {self.shift_count}",
                                  field_name="l", invalid_value=self.shift_count)
        if self.shift_count > self.m_int:
            raise PreconditionError(
                f"Shift count l={self.shift_count} exceeds the order m={self.m_int}",
                operation="mc_check",
                details={"m": self.m_int, "l": self.shift_count}
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "m": self.m_int,
            "l": self.shift_count,
            "x0": str(self.x0),
            "samples": self.samples,
            "seed": self.seed
        }


@dataclass(frozen=True)
class McResult:
    """Sample mean against the exact reference"""
    family: str
    config: McConfig
    estimate: float
    std_error: float
    exact: Fraction
    z_score: float

    def passed(self, threshold: float = MonteCarloConstants.Z_THRESHOLD) -> bool:
        return abs(self.z_score) <= threshold

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization"""
        z_score = self.z_score
        if math.isinf(z_score):
            z_score = "inf" if z_score > 0 else "-inf"
        return {
            "family": self.family,
            "config": self.config.to_dict(),
            "estimate": self.estimate,
            "std_error": self.std_error,
            "exact": str(self.exact),
            "z_score": z_score
        }
