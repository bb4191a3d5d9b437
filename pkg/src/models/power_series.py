"""
Truncated Formal Power Series for the Appell identity toolkit

Series in the formal variable u with MultiPoly coefficients: exact product,
reciprocal, logarithm, exponential and powers with a symbolic exponent.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence, Tuple, Union

from ..core.exceptions import PreconditionError
from .multipoly import Bindings, MultiPoly, Scalar, Variable

Coefficient = Union[MultiPoly, Scalar]


@dataclass(frozen=True)
class PowerSeries:
    """
    Dense truncated series c_0 + c_1 u + ... + c_N u^N.

    Binary operations truncate to the smaller of the two orders.
    """
    truncation_order: int
    coeffs: Tuple[MultiPoly, ...]

    def __post_init__(self):
        if self.truncation_order < 0:
            raise PreconditionError(
                f"Truncation order must be nonnegative, got {self.truncation_order}",
                operation="PowerSeries"
            )
        coeffs = tuple(MultiPoly.coerce(c) for c in self.coeffs)
        if len(coeffs) != self.truncation_order + 1:
            raise PreconditionError(
                f"Expected {self.truncation_order + 1} coefficients, got {len(coeffs)}",
                operation="PowerSeries"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Coefficient]) -> "PowerSeries":
        return cls(len(coeffs) - 1, tuple(MultiPoly.coerce(c) for c in coeffs))

    @classmethod
    def from_rationals(cls, values: Iterable[Scalar]) -> "PowerSeries":
        """Series with constant polynomial coefficients"""
        return cls.from_coefficients([MultiPoly.constant(v) for v in values])

    @classmethod
    def one(cls, truncation_order: int) -> "PowerSeries":
        return cls.from_coefficients([1] + [0] * truncation_order)

    @classmethod
    def zero(cls, truncation_order: int) -> "PowerSeries":
        return cls.from_coefficients([0] * (truncation_order + 1))

    @classmethod
    def exponential(cls, argument: Union[Variable, str], truncation_order: int) -> "PowerSeries":
        """The series e^{u * argument}"""
        arg = MultiPoly.var(argument)
        coeffs = []
        power = MultiPoly.one()
        for k in range(truncation_order + 1):
            coeffs.append(power.scale(Fraction(1, factorial(k))))
            power = power * arg
        return cls.from_coefficients(coeffs)

    def coefficient(self, k: int) -> MultiPoly:
        if k < 0 or k > self.truncation_order:
            raise PreconditionError(
                f"Coefficient u^{k} outside truncation order {self.truncation_order}",
                operation="coefficient"
            )
        return self.coeffs[k]

    @property
    def constant_term(self) -> MultiPoly:
        return self.coeffs[0]

    def truncate(self, truncation_order: int) -> "PowerSeries":
        order = min(truncation_order, self.truncation_order)
        return PowerSeries(order, self.coeffs[:order + 1])

    def evaluate(self, bindings: Bindings) -> "PowerSeries":
        """Specialise variables in every coefficient"""
        return PowerSeries(self.truncation_order, tuple(c.evaluate(bindings) for c in self.coeffs))

    def scale(self, factor: Coefficient) -> "PowerSeries":
        factor = MultiPoly.coerce(factor)
        return PowerSeries(self.truncation_order, tuple(c * factor for c in self.coeffs))

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.truncation_order, other.truncation_order)
        return PowerSeries(order, tuple(self.coeffs[k] + other.coeffs[k] for k in range(order + 1)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        order = min(self.truncation_order, other.truncation_order)
        return PowerSeries(order, tuple(self.coeffs[k] - other.coeffs[k] for k in range(order + 1)))

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        return ps_mul(self, other)


def _require_constant(series: PowerSeries, expected: int, operation: str) -> None:
    if series.constant_term != expected:
        raise PreconditionError(
            f"{operation} requires constant term {expected}, got '{series.constant_term}'",
            operation=operation,
            details={"constant_term": str(series.constant_term)}
        )


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to the smaller order"""
    order = min(a.truncation_order, b.truncation_order)
    coeffs = []
    for n in range(order + 1):
        total = MultiPoly.zero()
        for k in range(n + 1):
            left, right = a.coeffs[k], b.coeffs[n - k]
            if not left.is_zero() and not right.is_zero():
                total = total + left * right
        coeffs.append(total)
    return PowerSeries(order, tuple(coeffs))


def ps_reciprocal(s: PowerSeries) -> PowerSeries:
    """1/s for a series with constant term 1"""
    _require_constant(s, 1, "ps_reciprocal")
    result = [MultiPoly.one()]
    for n in range(1, s.truncation_order + 1):
        total = MultiPoly.zero()
        for k in range(1, n + 1):
            if not s.coeffs[k].is_zero():
                total = total + s.coeffs[k] * result[n - k]
        result.append(-total)
    return PowerSeries(s.truncation_order, tuple(result))


def ps_log(s: PowerSeries) -> PowerSeries:
    """log(s) for a series with constant term 1, from s' = log(s)' * s"""
    _require_constant(s, 1, "ps_log")
    result = [MultiPoly.zero()]
    for n in range(1, s.truncation_order + 1):
        total = MultiPoly.zero()
        for k in range(1, n):
            if not result[k].is_zero() and not s.coeffs[n - k].is_zero():
                total = total + (result[k] * s.coeffs[n - k]).scale(k)
        result.append(s.coeffs[n] - total.scale(Fraction(1, n)))
    return PowerSeries(s.truncation_order, tuple(result))


def ps_exp(s: PowerSeries) -> PowerSeries:
    """exp(s) for a series with constant term 0, from exp(s)' = s' * exp(s)"""
    _require_constant(s, 0, "ps_exp")
    result = [MultiPoly.one()]
    for n in range(1, s.truncation_order + 1):
        total = MultiPoly.zero()
        for k in range(1, n + 1):
            if not s.coeffs[k].is_zero():
                total = total + (s.coeffs[k] * result[n - k]).scale(k)
        result.append(total.scale(Fraction(1, n)))
    return PowerSeries(s.truncation_order, tuple(result))


def ps_pow_symbolic(s: PowerSeries, exponent: Union[Variable, str, MultiPoly]) -> PowerSeries:
    """
    s**exponent realised as exp(exponent * log(s)).

    The coefficient of u^k is a polynomial of degree at most k in the exponent.
    """
    _require_constant(s, 1, "ps_pow_symbolic")
    if isinstance(exponent, MultiPoly):
        factor = exponent
    else:
        factor = MultiPoly.var(exponent)
    return ps_exp(ps_log(s).scale(factor))


def ps_power(s: PowerSeries, count: int) -> PowerSeries:
    """count-fold product s * s * ... * s; count = 0 gives the series 1"""
    if count < 0:
        raise PreconditionError(f"Power must be nonnegative, got {count}", operation="ps_power")
    result = PowerSeries.one(s.truncation_order)
    for _ in range(count):
        result = ps_mul(result, s)
    return result


def egf_series(values: Iterable[Scalar], truncation_order: int) -> PowerSeries:
    """Series with coefficients values[k] / k!, zero-padded to the order"""
    values = list(values)[:truncation_order + 1]
    values += [0] * (truncation_order + 1 - len(values))
    return PowerSeries.from_coefficients(
        [Fraction(v) / factorial(k) for k, v in enumerate(values)]
    )
