"""
Appell Engine

Builds Appell families from reciprocal moment-generating series and provides
the exact expectation operators for uniform and symmetric Bernoulli shifts.
"""

from fractions import Fraction
from math import comb, factorial
from typing import Union

from ..core.exceptions import PreconditionError, TruncationError, VariableError
from ..models.appell_family import AppellFamily
from ..models.multipoly import MultiPoly, Variable
from ..models.power_series import PowerSeries, ps_mul
from ..utils.logger import logger

VariableLike = Union[Variable, str]


def family_from_series(recip_mgf: PowerSeries, arg: VariableLike = Variable.X,
                       label: str = "family") -> AppellFamily:
    """
    Appell family whose EGF prefactor is recip_mgf.

    Base values are c_k = k! [u^k] recip_mgf, so the family reaches degree
    recip_mgf.truncation_order.

    Raises:
        PreconditionError: If the constant term of recip_mgf is not 1
    """
    if recip_mgf.constant_term != 1:
        raise PreconditionError(
            f"Reciprocal MGF series for {label} must have constant term 1",
            operation="family_from_series",
            details={"constant_term": str(recip_mgf.constant_term)}
        )
    base = [c.scale(factorial(k)) for k, c in enumerate(recip_mgf.coeffs)]
    family = AppellFamily(base, arg, label)
    logger.log_family_build(label, family.max_degree, argument=family.argument_variable.value)
    return family


def family_member(family: AppellFamily, n: int) -> MultiPoly:
    """
    Degree-n member, sum_k C(n, k) c_k arg^{n-k}, memoized on the family.

    Raises:
        TruncationError: If n is negative or beyond the constructed range
    """
    return family.member(n)


def series_member(recip_mgf: PowerSeries, n: int, arg: VariableLike = Variable.X) -> MultiPoly:
    """n! [u^n] (recip_mgf * e^{u arg}), computed without the binomial form"""
    if n < 0 or n > recip_mgf.truncation_order:
        raise TruncationError(n, recip_mgf.truncation_order, "series_member")
    head = recip_mgf.truncate(n)
    product = ps_mul(head, PowerSeries.exponential(arg, n))
    return product.coefficient(n).scale(factorial(n))


def trivial_family(arg: VariableLike = Variable.X, truncation_order: int = 0) -> AppellFamily:
    """The family of the zero variable: member(n) = arg^n"""
    return AppellFamily([1] + [0] * truncation_order, arg, "trivial")


def expect_uniform_shift(p: MultiPoly, arg: VariableLike = Variable.X) -> MultiPoly:
    """E[p(arg + theta)] for theta uniform on [0, 1], i.e. P(arg + 1) - P(arg)"""
    primitive = p.antiderivative(arg)
    return primitive.shift(arg, 1) - primitive


def expect_bernoulli_shift(p: MultiPoly, arg: VariableLike = Variable.X) -> MultiPoly:
    """E[p(arg + eta)] for eta in {0, 1} with probability 1/2 each"""
    return (p + p.shift(arg, 1)).scale(Fraction(1, 2))


def iterate_expectation(p: MultiPoly, shift_count: int, uniform: bool,
                        arg: VariableLike = Variable.X) -> MultiPoly:
    """Apply shift_count independent uniform (or Bernoulli) shifts"""
    operator = expect_uniform_shift if uniform else expect_bernoulli_shift
    for _ in range(shift_count):
        p = operator(p, arg)
    return p


def family_convolve(f: AppellFamily, g: AppellFamily, n: int) -> MultiPoly:
    """
    Binomial convolution sum_k C(n, k) f_k(x) g_{n-k}(y): the degree-n member of
    the family of the sum of the two underlying variables, at x + y.

    Raises:
        VariableError: If both families use the same argument variable
    """
    if f.argument_variable is g.argument_variable:
        raise VariableError(
            f"Cannot convolve {f.label} and {g.label}: both use {f.argument_variable.value}",
            variable=f.argument_variable.value
        )
    total = MultiPoly.zero()
    for k in range(n + 1):
        total = total + (f.member(k) * g.member(n - k)).scale(comb(n, k))
    return total
