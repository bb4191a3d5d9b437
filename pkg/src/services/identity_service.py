"""
Identity Verification Service

A registry of named identities between Appell, Bernoulli, Euler and mixed
polynomials. Each checker returns the residuals LHS - RHS for one degree; an
identity passes over a range when every residual is the zero polynomial of
Q[m, l, x, y].
"""

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Mapping, Optional, Sequence

from ..core.config_manager import config
from ..core.constants import FamilyKind, VerificationConstants
from ..core.exceptions import TruncationError, UnknownIdentityError, ValidationError
from ..models.appell_family import AppellFamily
from ..models.identity_report import IdentityReport, SuiteSummary
from ..models.multipoly import MultiPoly, Variable
from ..utils.logger import logger
from .appell_engine import (
    expect_bernoulli_shift, expect_uniform_shift, family_convolve,
    iterate_expectation, series_member, trivial_family
)
from .family_service import PolynomialFamilyService, create_family_service

Checker = Callable[[PolynomialFamilyService, int], Sequence[MultiPoly]]

X, Y, M, L = Variable.X, Variable.Y, Variable.M, Variable.L
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class IdentitySpec:
    """A named identity and how to check it at one degree"""
    name: str
    description: str
    check: Checker
    classical: bool = False
    lookahead: int = 0

    def default_n_max(self, truncation_order: int) -> int:
        preferred = VerificationConstants.CLASSICAL_N_MAX if self.classical \
            else VerificationConstants.DEFAULT_N_MAX
        return max(0, min(preferred, truncation_order - self.lookahead))


IDENTITY_REGISTRY: Dict[str, IdentitySpec] = {}


def identity(name: str, description: str, classical: bool = False, lookahead: int = 0):
    """Register a checker under name, keeping registration order"""
    def register(check: Checker) -> Checker:
        IDENTITY_REGISTRY[name] = IdentitySpec(name, description, check, classical, lookahead)
        return check
    return register


# Family shorthands

def _gen_b(s: PolynomialFamilyService, arg=X, order=M, **shifts) -> AppellFamily:
    return s.family(FamilyKind.GEN_BERNOULLI, arg, order, shifts)


def _gen_e(s: PolynomialFamilyService, arg=X, order=M, **shifts) -> AppellFamily:
    return s.family(FamilyKind.GEN_EULER, arg, order, shifts)


def _mixed(s: PolynomialFamilyService, arg=X, **shifts) -> AppellFamily:
    return s.family(FamilyKind.MIXED, arg, M, shifts)


def _binomial_expansion(base: AppellFamily, family: AppellFamily, n: int) -> MultiPoly:
    """sum_k C(n, k) base_k(0) family_{n-k}"""
    total = MultiPoly.zero()
    for k in range(n + 1):
        c = base.base_value(k)
        if not c.is_zero():
            total = total + (c * family.member(n - k)).scale(comb(n, k))
    return total


def _power(var: Variable, n: int) -> MultiPoly:
    return MultiPoly.var(var, n) if n else MultiPoly.one()


def _with_lower_term(s: PolynomialFamilyService, n: int, euler_y: AppellFamily) -> MultiPoly:
    """sum_k C(n, k) [B_k^{(m)}(x) + k/2 B_{k-1}^{(m-1)}(x)] euler_y_{n-k}; the k = 0 correction is zero"""
    bm, bm1 = _gen_b(s), _gen_b(s, m=-1)
    total = MultiPoly.zero()
    for k in range(n + 1):
        bracket = bm.member(k)
        if k:
            bracket = bracket + bm1.member(k - 1).scale(Fraction(k, 2))
        total = total + (bracket * euler_y.member(n - k)).scale(comb(n, k))
    return total


# Appell structure

@identity("appell-binomial", "Q_n(x) from its base values equals n![u^n] A(u)e^{ux} for every family kind")
def _appell_binomial(s, n):
    return [s.family(kind).member(n) - series_member(s.reciprocal_series(kind), n, X)
            for kind in FamilyKind]


@identity("mean-value-B", "E[B_n(x + theta)] = x^n", classical=True)
def _mean_value_b(s, n):
    return [expect_uniform_shift(s.bernoulli(n)) - _power(X, n)]


@identity("mean-value-E", "E[E_n(x + eta)] = x^n", classical=True)
def _mean_value_e(s, n):
    return [expect_bernoulli_shift(s.euler(n)) - _power(X, n)]


@identity("deriv-recursion", "d/dx Q_n(x) = n Q_{n-1}(x) for every family kind")
def _deriv_recursion(s, n):
    residuals = []
    for kind in FamilyKind:
        family = s.family(kind)
        lower = family.member(n - 1).scale(n) if n else MultiPoly.zero()
        residuals.append(family.member(n).derivative(X) - lower)
    return residuals


@identity("order-zero", "B_n^{(0)}(x) = E_n^{(0)}(x) = Q_n^{((0)+(0))}(x) = x^n")
def _order_zero(s, n):
    target = _power(X, n)
    return [
        s.gen_bernoulli(n).evaluate({M: 0}) - target,
        s.gen_euler(n).evaluate({M: 0}) - target,
        s.mixed_q(n).evaluate({M: 0, L: 0}) - target
    ]


# Generalized Bernoulli

@identity("order-addition-B", "B_n^{(m+l)}(x+y) = sum C(n,i) B_i^{(m)}(x) B_{n-i}^{(l)}(y)")
def _order_addition_b(s, n):
    lhs = _gen_b(s, m=MultiPoly.var(L)).member(n).shift(X, MultiPoly.var(Y))
    return [lhs - family_convolve(_gen_b(s), _gen_b(s, Y, L), n)]


@identity("translation-B", "B_n^{(m)}(x+y) = sum C(n,i) B_i^{(m)}(x) y^{n-i}")
def _translation_b(s, n):
    lhs = s.gen_bernoulli(n).shift(X, MultiPoly.var(Y))
    return [lhs - family_convolve(_gen_b(s), trivial_family(Y, n), n)]


@identity("difference-B", "B_n^{(m)}(x+1) - B_n^{(m)}(x) = n B_{n-1}^{(m-1)}(x)")
def _difference_b(s, n):
    p = s.gen_bernoulli(n)
    rhs = _gen_b(s, m=-1).member(n - 1).scale(n) if n else MultiPoly.zero()
    return [p.shift(X, 1) - p - rhs]


@identity("expect-reduce-B", "E[B_n^{(m)}(x + theta)] = B_n^{(m-1)}(x)")
def _expect_reduce_b(s, n):
    return [expect_uniform_shift(s.gen_bernoulli(n)) - _gen_b(s, m=-1).member(n)]


@identity("antiderivative-B",
          "E[B_n^{(m)}(x + theta)] = (B_{n+1}^{(m)}(x+1) - B_{n+1}^{(m)}(x)) / (n+1)", lookahead=1)
def _antiderivative_b(s, n):
    upper = s.gen_bernoulli(n + 1)
    rhs = (upper.shift(X, 1) - upper).scale(Fraction(1, n + 1))
    return [expect_uniform_shift(s.gen_bernoulli(n)) - rhs]


# Generalized Euler

@identity("order-addition-E", "E_n^{(m+l)}(x+y) = sum C(n,i) E_i^{(m)}(x) E_{n-i}^{(l)}(y)")
def _order_addition_e(s, n):
    lhs = _gen_e(s, m=MultiPoly.var(L)).member(n).shift(X, MultiPoly.var(Y))
    return [lhs - family_convolve(_gen_e(s), _gen_e(s, Y, L), n)]


@identity("translation-E", "E_n^{(m)}(x+y) = sum C(n,i) E_i^{(m)}(x) y^{n-i}")
def _translation_e(s, n):
    lhs = s.gen_euler(n).shift(X, MultiPoly.var(Y))
    return [lhs - family_convolve(_gen_e(s), trivial_family(Y, n), n)]


@identity("difference-E", "E_n^{(m)}(x+1) + E_n^{(m)}(x) = 2 E_n^{(m-1)}(x)")
def _difference_e(s, n):
    p = s.gen_euler(n)
    return [p.shift(X, 1) + p - _gen_e(s, m=-1).member(n).scale(2)]


@identity("expect-reduce-E", "E[E_n^{(m)}(x + eta)] = E_n^{(m-1)}(x)")
def _expect_reduce_e(s, n):
    return [expect_bernoulli_shift(s.gen_euler(n)) - _gen_e(s, m=-1).member(n)]


# Mixed family

@identity("mixed-conv", "Q_n^{((m)+(l))}(x+y) = sum C(n,k) B_k^{(m)}(x) E_{n-k}^{(l)}(y)")
def _mixed_conv(s, n):
    lhs = s.mixed_q(n).shift(X, MultiPoly.var(Y))
    return [lhs - family_convolve(_gen_b(s), _gen_e(s, Y, L), n)]


@identity("mixed-binomial", "Q_n^{((m)+(l))}(x) = sum C(n,k) Q_k^{((m)+(l))}(0) x^{n-k}")
def _mixed_binomial(s, n):
    q = _mixed(s)
    lhs = series_member(s.reciprocal_series(FamilyKind.MIXED), n, X)
    return [lhs - _binomial_expansion(q, trivial_family(X, n), n)]


@identity("mixed-two-expansions",
          "Q_n(x) = sum C(n,k) Q_k^{((m-1)+(l))}(0) B_{n-k}(x) = sum C(n,k) Q_k^{((m)+(l-1))}(0) E_{n-k}(x)")
def _mixed_two_expansions(s, n):
    q = s.mixed_q(n)
    bernoulli = s.family(FamilyKind.BERNOULLI)
    euler = s.family(FamilyKind.EULER)
    return [
        q - _binomial_expansion(_mixed(s, m=-1), bernoulli, n),
        q - _binomial_expansion(_mixed(s, l=-1), euler, n)
    ]


@identity("mixed-expect-uniform", "E[Q_n^{((m)+(l))}(x + theta)] = Q_n^{((m-1)+(l))}(x)")
def _mixed_expect_uniform(s, n):
    return [expect_uniform_shift(s.mixed_q(n)) - _mixed(s, m=-1).member(n)]


@identity("mixed-antiderivative",
          "E[Q_n^{((m)+(l))}(x + theta)] = (Q_{n+1}(x+1) - Q_{n+1}(x)) / (n+1)", lookahead=1)
def _mixed_antiderivative(s, n):
    upper = s.mixed_q(n + 1)
    rhs = (upper.shift(X, 1) - upper).scale(Fraction(1, n + 1))
    return [expect_uniform_shift(s.mixed_q(n)) - rhs]


@identity("mixed-difference", "Q_n(x+1) - Q_n(x) = n Q_{n-1}^{((m-1)+(l))}(x)")
def _mixed_difference(s, n):
    q = s.mixed_q(n)
    rhs = _mixed(s, m=-1).member(n - 1).scale(n) if n else MultiPoly.zero()
    return [q.shift(X, 1) - q - rhs]


@identity("mixed-expect-bernoulli", "E[Q_n^{((m)+(l))}(x + eta)] = Q_n^{((m)+(l-1))}(x)")
def _mixed_expect_bernoulli(s, n):
    return [expect_bernoulli_shift(s.mixed_q(n)) - _mixed(s, l=-1).member(n)]


@identity("mixed-average", "Q_n(x+1) + Q_n(x) = 2 Q_n^{((m)+(l-1))}(x)")
def _mixed_average(s, n):
    q = s.mixed_q(n)
    return [q.shift(X, 1) + q - _mixed(s, l=-1).member(n).scale(2)]


@identity("lemma-decomposition",
          "Q_n^{((m)+(l))}(x) = Q_n^{((m)+(l-1))}(x) - n/2 Q_{n-1}^{((m-1)+(l))}(x)")
def _lemma_decomposition(s, n):
    rhs = _mixed(s, l=-1).member(n)
    if n:
        rhs = rhs - _mixed(s, m=-1).member(n - 1).scale(Fraction(n, 2))
    return [s.mixed_q(n) - rhs]


@identity("reindex",
          "sum C(n,k) k/2 B_{k-1}^{(m-1)}(x) E_{n-k}^{(l)}(y) = n/2 sum C(n-1,k) B_k^{(m-1)}(x) E_{n-1-k}^{(l)}(y)")
def _reindex(s, n):
    bm1, ey = _gen_b(s, m=-1), _gen_e(s, Y, L)
    lhs = MultiPoly.zero()
    for k in range(1, n + 1):
        lhs = lhs + (bm1.member(k - 1) * ey.member(n - k)).scale(comb(n, k) * Fraction(k, 2))
    rhs = family_convolve(bm1, ey, n - 1).scale(Fraction(n, 2)) if n else MultiPoly.zero()
    return [lhs - rhs]


@identity("main-theorem",
          "sum C(n,k) B_k^{(m)}(x) E_{n-k}^{(l-1)}(y) = sum C(n,k) [B_k^{(m)}(x) + k/2 B_{k-1}^{(m-1)}(x)] E_{n-k}^{(l)}(y)")
def _main_theorem(s, n):
    lhs = family_convolve(_gen_b(s), _gen_e(s, Y, L, l=-1), n)
    return [lhs - _with_lower_term(s, n, _gen_e(s, Y, L))]


@identity("corollary-1",
          "B_n^{(m)}(x+y) = sum C(n,k) [B_k^{(m)}(x) + k/2 B_{k-1}^{(m-1)}(x)] E_{n-k}(y)")
def _corollary_1(s, n):
    lhs = s.gen_bernoulli(n).shift(X, MultiPoly.var(Y))
    return [lhs - _with_lower_term(s, n, s.family(FamilyKind.EULER, Y))]


@identity("corollary-2",
          "E_n^{(l)}(x+y) = sum C(n,k) 2/(k+1) [E_{k+1}^{(l-1)}(y) - E_{k+1}^{(l)}(y)] B_{n-k}(x)", lookahead=1)
def _corollary_2(s, n):
    ey, ey1 = _gen_e(s, Y, L), _gen_e(s, Y, L, l=-1)
    lhs = _gen_e(s, X, L).member(n).shift(X, MultiPoly.var(Y))
    rhs = MultiPoly.zero()
    for k in range(n + 1):
        difference = ey1.member(k + 1) - ey.member(k + 1)
        rhs = rhs + (difference * s.bernoulli(n - k)).scale(comb(n, k) * Fraction(2, k + 1))
    return [lhs - rhs]


@identity("mixed-unit-order", "Q_n^{((1)+(1))}(x) = 2^n B_n(x/2)", classical=True)
def _mixed_unit_order(s, n):
    scaled = s.bernoulli(n).substitute(X, MultiPoly.var(X).scale(HALF)).scale(2 ** n)
    return [s.mixed_q(n).evaluate({M: 1, L: 1}) - scaled]


# Classical Bernoulli-Euler relations

@identity("cheon", "B_n(y) = sum_{k != 1} C(n,k) B_k(0) E_{n-k}(y)", classical=True)
def _cheon(s, n):
    bernoulli, euler = s.family(FamilyKind.BERNOULLI), s.family(FamilyKind.EULER, Y)
    rhs = MultiPoly.zero()
    for k in range(n + 1):
        if k != 1:
            rhs = rhs + (bernoulli.base_value(k) * euler.member(n - k)).scale(comb(n, k))
    return [s.bernoulli(n, Y) - rhs]


@identity("sp-equivalence", "2^n B_n(x/2) = sum C(n,k) B_k(0) E_{n-k}(x)", classical=True)
def _sp_equivalence(s, n):
    lhs = s.bernoulli(n).substitute(X, MultiPoly.var(X).scale(HALF)).scale(2 ** n)
    return [lhs - _binomial_expansion(s.family(FamilyKind.BERNOULLI), s.family(FamilyKind.EULER), n)]


@identity("prop-identity", "B_n(x) - n/2 E_{n-1}(x) = 2^n B_n(x/2)", classical=True)
def _prop_identity(s, n):
    lhs = s.bernoulli(n)
    if n:
        lhs = lhs - s.euler(n - 1).scale(Fraction(n, 2))
    return [lhs - s.bernoulli(n).substitute(X, MultiPoly.var(X).scale(HALF)).scale(2 ** n)]


# Identities with an expectation that accept a number of shifts
EXPECTATION_IDENTITIES = ("mean-value-B", "mean-value-E", "expect-reduce-B", "expect-reduce-E")


def _expectation_residual(s: PolynomialFamilyService, name: str, n: int, shift_count: int) -> MultiPoly:
    uniform = name.endswith("-B")
    kind = FamilyKind.GEN_BERNOULLI if uniform else FamilyKind.GEN_EULER
    if name.startswith("mean-value"):
        # Appell polynomials of the sum of shift_count variates
        p = s.family(kind).member(n).evaluate({M: shift_count})
        return iterate_expectation(p, shift_count, uniform) - _power(X, n)
    p = s.family(kind).member(n)
    reduced = s.family(kind, shifts={M: -shift_count}).member(n)
    return iterate_expectation(p, shift_count, uniform) - reduced


class IdentityService:
    """
    Runs registry entries against a family service.
    """

    def __init__(self, families: Optional[PolynomialFamilyService] = None,
                 registry: Optional[Mapping[str, IdentitySpec]] = None,
                 workers: Optional[int] = None):
        """
        Args:
            families: Family service; a fresh one at APPELL_NMAX by default
            registry: Identities to run; the full registry by default
            workers: Thread pool size for verify_all
        """
        self.families = families or create_family_service()
        self.registry: Mapping[str, IdentitySpec] = registry if registry is not None else IDENTITY_REGISTRY
        self.workers = workers or config.verify_workers

    @property
    def names(self) -> List[str]:
        return list(self.registry)

    def spec(self, name: str) -> IdentitySpec:
        """
        Raises:
            UnknownIdentityError: If name is not registered
        """
        try:
            return self.registry[name]
        except KeyError:
            raise UnknownIdentityError(name)

    def _resolve_n_max(self, spec: IdentitySpec, n_max: Optional[int]) -> int:
        truncation = self.families.truncation_order
        if n_max is None:
            return spec.default_n_max(truncation)
        if n_max < 0:
            raise ValidationError(f"n_max must be nonnegative, got {n_max}",
                                  field_name="n_max", invalid_value=n_max)
        if n_max + spec.lookahead > truncation:
            raise TruncationError(n_max + spec.lookahead, truncation, spec.name)
        return n_max

    def _run(self, name: str, n_max: int, residual_at: Callable[[int], Sequence[MultiPoly]],
             shift_count: Optional[int] = None) -> IdentityReport:
        residuals: Dict[int, List[MultiPoly]] = {}
        error = None
        start = time.perf_counter()
        try:
            for n in range(n_max + 1):
                parts = list(residual_at(n))
                if any(not r.is_zero() for r in parts):
                    residuals[n] = parts
        except Exception as exc:
            error = str(exc)
            logger.error(f"Identity {name} raised: {exc}", identity=name, exc_info=True)
        report = IdentityReport(name, (0, n_max), residuals, time.perf_counter() - start,
                                shift_count=shift_count, error=error)
        logger.log_identity_result(name, report.status.value, n_max, report.elapsed,
                                   report.failing_degrees)
        return report

    def verify(self, name: str, n_max: Optional[int] = None) -> IdentityReport:
        """
        Check one identity for n = 0..n_max.

        Raises:
            UnknownIdentityError: If name is not registered
            TruncationError: If n_max (plus look-ahead) exceeds the truncation
        """
        spec = self.spec(name)
        n_max = self._resolve_n_max(spec, n_max)
        return self._run(name, n_max, lambda n: spec.check(self.families, n))

    def verify_expectation(self, name: str, n_max: Optional[int] = None,
                           shift_count: int = 1) -> IdentityReport:
        """
        Check an expectation identity with shift_count independent shifts.

        expect-reduce-* compare against the order lowered by shift_count;
        mean-value-* use the order-shift_count specialisation and compare
        against x^n.
        """
        if name not in EXPECTATION_IDENTITIES:
            if name not in self.registry:
                raise UnknownIdentityError(name)
            raise ValidationError(f"Identity '{name}' does not take a shift count",
                                  field_name="identity", invalid_value=name)
        if shift_count < 1:
            raise ValidationError(f"Shift count must be positive, got {shift_count}",
                                  field_name="shift_count", invalid_value=shift_count)
        spec = self.spec(name)
        n_max = self._resolve_n_max(spec, n_max)
        return self._run(name, n_max,
                         lambda n: [_expectation_residual(self.families, name, n, shift_count)],
                         shift_count=shift_count)

    def _verify_quietly(self, name: str, n_max: Optional[int]) -> IdentityReport:
        try:
            return self.verify(name, n_max)
        except Exception as exc:
            logger.warning(f"Identity {name} could not run: {exc}", identity=name)
            upper = n_max if n_max is not None else 0
            return IdentityReport(name, (0, upper), error=str(exc))

    def verify_all(self, n_max: Optional[int] = None) -> SuiteSummary:
        """Run every registered identity; failures are reported, never raised"""
        names = self.names
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            reports = list(pool.map(lambda name: self._verify_quietly(name, n_max), names))
        summary = SuiteSummary(reports)
        logger.info(f"Identity suite: {summary.passed_count}/{summary.total} passed",
                    passed=summary.passed_count, total=summary.total)
        return summary


# Factory function for creating the identity service
def create_identity_service(truncation_order: Optional[int] = None,
                            registry: Optional[Mapping[str, IdentitySpec]] = None) -> IdentityService:
    """
    Factory function to create an identity service.

    Args:
        truncation_order: Series truncation of the family service
        registry: Optional replacement registry

    Returns:
        Identity service instance
    """
    return IdentityService(create_family_service(truncation_order), registry)
