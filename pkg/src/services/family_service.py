"""
Polynomial Family Service

Named constructors for the classical Bernoulli and Euler polynomials, their
order-m generalizations with a symbolic order, and the mixed family
Q_n^{((m)+(l))}; plus order specialization and Bernoulli/Euler numbers.
"""

import threading
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Tuple, Union

from ..core.config_manager import config
from ..core.constants import FamilyKind, SeriesConstants
from ..core.exceptions import PreconditionError, ValidationError, VariableError
from ..models.appell_family import AppellFamily
from ..models.family_id import FamilyId
from ..models.multipoly import Bindings, MultiPoly, Variable
from ..models.power_series import (
    PowerSeries, egf_series, ps_mul, ps_pow_symbolic, ps_power, ps_reciprocal
)
from ..utils.logger import logger, performance_timer
from .appell_engine import family_from_series, family_member

VariableLike = Union[Variable, str]
OrderShifts = Mapping[VariableLike, Union[MultiPoly, int, Fraction]]


@lru_cache(maxsize=None)
def uniform_reciprocal(truncation_order: int) -> PowerSeries:
    """u / (e^u - 1), the reciprocal of the U[0, 1] moment-generating function"""
    mgf = egf_series([Fraction(1, k + 1) for k in range(truncation_order + 1)], truncation_order)
    return ps_reciprocal(mgf)


@lru_cache(maxsize=None)
def bernoulli_reciprocal(truncation_order: int) -> PowerSeries:
    """2 / (e^u + 1), the reciprocal of the Ber(1/2) moment-generating function"""
    mgf = egf_series([1] + [Fraction(1, 2)] * truncation_order, truncation_order)
    return ps_reciprocal(mgf)


class PolynomialFamilyService:
    """
    Builds and caches the families at a fixed series truncation.

    Families are keyed by kind, argument variable, order variable and order
    shifts; shifted families are Taylor shifts of the unshifted base values.
    """

    def __init__(self, truncation_order: Optional[int] = None):
        """
        Args:
            truncation_order: Highest buildable degree; defaults to APPELL_NMAX

        Raises:
            ValidationError: If truncation_order is negative
        """
        if truncation_order is None:
            truncation_order = config.appell_nmax
        if truncation_order < 0:
            raise ValidationError(f"Truncation order must be nonnegative, got {truncation_order}",
                                  field_name="truncation_order", invalid_value=truncation_order)
        self.truncation_order = truncation_order
        self._families: Dict[tuple, AppellFamily] = {}
        self._series: Dict[tuple, PowerSeries] = {}
        # Reentrant: shifted families are built from their unshifted parent
        self._lock = threading.RLock()

        logger.debug(f"Family service initialized (truncation {self.truncation_order})")

    # Series

    def reciprocal_series(self, kind: FamilyKind, order: VariableLike = Variable.M) -> PowerSeries:
        """
        The EGF prefactor of a family kind.

        The generalized kinds raise the classical prefactor to the symbolic
        power order; the mixed kind multiplies (u/(e^u-1))^m by (2/(e^u+1))^l.
        """
        kind = FamilyKind(kind)
        order = Variable.parse(order)
        key = (kind, order)
        with self._lock:
            series = self._series.get(key)
            if series is None:
                series = self._series[key] = self._build_series(kind, order)
            return series

    def _build_series(self, kind: FamilyKind, order: Variable) -> PowerSeries:
        N = self.truncation_order
        if kind is FamilyKind.BERNOULLI:
            return uniform_reciprocal(N)
        if kind is FamilyKind.EULER:
            return bernoulli_reciprocal(N)
        if kind is FamilyKind.GEN_BERNOULLI:
            return ps_pow_symbolic(uniform_reciprocal(N), order)
        if kind is FamilyKind.GEN_EULER:
            return ps_pow_symbolic(bernoulli_reciprocal(N), order)
        return ps_mul(ps_pow_symbolic(uniform_reciprocal(N), Variable.M),
                      ps_pow_symbolic(bernoulli_reciprocal(N), Variable.L))

    # Families

    def family(self, kind: Union[FamilyKind, str], arg: VariableLike = Variable.X,
               order: VariableLike = Variable.M,
               shifts: Optional[OrderShifts] = None) -> AppellFamily:
        """
        The family of the given kind over arg.

        Args:
            kind: Family kind
            arg: Argument variable, x or y
            order: Order variable of the generalized kinds (m or l)
            shifts: Order-variable deltas, e.g. {m: -1} for B^{(m-1)}

        Raises:
            VariableError: If order is not m or l
        """
        kind = FamilyKind(kind)
        arg = Variable.parse(arg)
        order = Variable.parse(order)
        if order not in (Variable.M, Variable.L):
            raise VariableError(f"Order variable must be m or l, got {order.value}", variable=order.value)
        if kind in (FamilyKind.BERNOULLI, FamilyKind.EULER, FamilyKind.MIXED):
            order = Variable.M

        shift_items = tuple(sorted(
            (Variable.parse(var).value, MultiPoly.coerce(delta))
            for var, delta in (shifts or {}).items()
            if not MultiPoly.coerce(delta).is_zero()
        ))
        key = (kind, arg, order, shift_items)
        with self._lock:
            cached = self._families.get(key)
            if cached is None:
                cached = self._families[key] = self._build(kind, arg, order, shift_items)
            return cached

    def _build(self, kind: FamilyKind, arg: Variable, order: Variable, shift_items: tuple) -> AppellFamily:
        if shift_items:
            label = f"{self._label(kind, order)}[" + ", ".join(f"{v}+({d})" for v, d in shift_items) + "]"
            family = self.family(kind, arg, order).shifted(dict(shift_items), label)
        elif arg is not Variable.X:
            family = self.family(kind, Variable.X, order).with_argument(arg)
        else:
            with performance_timer("build_family", kind=kind.value, order=order.value):
                family = family_from_series(self.reciprocal_series(kind, order), arg,
                                            self._label(kind, order))
        return family

    @staticmethod
    def _label(kind: FamilyKind, order: Variable) -> str:
        if kind.is_classical or kind is FamilyKind.MIXED:
            return kind.value
        return f"{kind.value}({order.value})"

    def family_for(self, family_id: FamilyId, arg: VariableLike = Variable.X) -> AppellFamily:
        """Family named by an id, with its bound orders specialised"""
        family = self.family(family_id.kind, arg)
        if family_id.bindings:
            family = family.specialized(family_id.bindings, family_id.label)
        return family

    def member(self, family_id: FamilyId, n: int, arg: VariableLike = Variable.X) -> MultiPoly:
        """Degree-n member of the family named by an id"""
        return family_member(self.family(family_id.kind, arg), n).evaluate(family_id.bindings)

    # Named constructors

    def bernoulli(self, n: int, arg: VariableLike = Variable.X) -> MultiPoly:
        """B_n(arg)"""
        return family_member(self.family(FamilyKind.BERNOULLI, arg), n)

    def euler(self, n: int, arg: VariableLike = Variable.X) -> MultiPoly:
        """E_n(arg)"""
        return family_member(self.family(FamilyKind.EULER, arg), n)

    def gen_bernoulli(self, n: int, order: VariableLike = Variable.M,
                      arg: VariableLike = Variable.X) -> MultiPoly:
        """B_n^{(order)}(arg) with a symbolic order"""
        return family_member(self.family(FamilyKind.GEN_BERNOULLI, arg, order), n)

    def gen_euler(self, n: int, order: VariableLike = Variable.M,
                  arg: VariableLike = Variable.X) -> MultiPoly:
        """E_n^{(order)}(arg) with a symbolic order"""
        return family_member(self.family(FamilyKind.GEN_EULER, arg, order), n)

    def mixed_q(self, n: int, arg: VariableLike = Variable.X) -> MultiPoly:
        """Q_n^{((m)+(l))}(arg) with both orders symbolic"""
        return family_member(self.family(FamilyKind.MIXED, arg), n)

    @staticmethod
    def specialize_order(p: MultiPoly, bindings: Bindings) -> MultiPoly:
        """
        Bind the order indeterminates m and/or l to rationals.

        Raises:
            VariableError: If a binding names an argument variable
        """
        for var in bindings:
            if Variable.parse(var) not in (Variable.M, Variable.L):
                raise VariableError(
                    f"Only the orders m and l can be specialised, got {Variable.parse(var).value}",
                    variable=Variable.parse(var).value
                )
        return p.evaluate(bindings)

    def integer_order_family(self, kind: Union[FamilyKind, str], m_int: int, l_int: int = 0,
                             arg: VariableLike = Variable.X) -> AppellFamily:
        """
        Family of an integer-order sum of independent variates, from products
        of the classical prefactors rather than from the symbolic power.

        gen-bernoulli uses m_int uniform terms, gen-euler m_int Bernoulli
        terms and mixed m_int uniform plus l_int Bernoulli terms.
        """
        kind = FamilyKind(kind)
        if m_int < 0 or l_int < 0:
            raise PreconditionError(
                f"Integer orders must be nonnegative, got m={m_int}, l={l_int}",
                operation="integer_order_family"
            )
        if kind is not FamilyKind.MIXED and l_int:
            raise PreconditionError(
                f"Family '{kind.value}' takes a single order",
                operation="integer_order_family"
            )
        N = self.truncation_order
        if kind in (FamilyKind.BERNOULLI, FamilyKind.GEN_BERNOULLI):
            series = ps_power(uniform_reciprocal(N), m_int)
        elif kind in (FamilyKind.EULER, FamilyKind.GEN_EULER):
            series = ps_power(bernoulli_reciprocal(N), m_int)
        else:
            series = ps_mul(ps_power(uniform_reciprocal(N), m_int),
                            ps_power(bernoulli_reciprocal(N), l_int))
        return family_from_series(series, arg, f"{kind.value}[{m_int},{l_int}]")

    # Numbers

    def bernoulli_number(self, k: int) -> Fraction:
        """B_k(0); degrees beyond the truncation use a longer series"""
        _require_index(k)
        return _classical_base(FamilyKind.BERNOULLI, max(k, self.truncation_order))[k]

    def euler_member_at_zero(self, k: int) -> Fraction:
        """E_k(0)"""
        _require_index(k)
        return _classical_base(FamilyKind.EULER, max(k, self.truncation_order))[k]

    def golden_table(self, max_k: int = SeriesConstants.GOLDEN_TABLE_MAX) -> List[Tuple[int, Fraction, Fraction]]:
        """Rows (k, B_k(0), E_k(0)) for k = 0..max_k"""
        bernoulli_values = _classical_base(FamilyKind.BERNOULLI, max_k)
        euler_values = _classical_base(FamilyKind.EULER, max_k)
        return [(k, bernoulli_values[k], euler_values[k]) for k in range(max_k + 1)]


def _require_index(k: int) -> None:
    if k < 0:
        raise PreconditionError(f"Index must be nonnegative, got {k}", operation="classical_numbers")


@lru_cache(maxsize=None)
def _classical_base(kind: FamilyKind, truncation_order: int) -> Tuple[Fraction, ...]:
    if truncation_order < 0:
        raise PreconditionError(f"Degree must be nonnegative, got {truncation_order}",
                                operation="classical_numbers")
    series = uniform_reciprocal(truncation_order) if kind is FamilyKind.BERNOULLI \
        else bernoulli_reciprocal(truncation_order)
    family = family_from_series(series, Variable.X, kind.value)
    return tuple(c.constant_value() for c in family.base)


# Factory function for creating the family service
def create_family_service(truncation_order: Optional[int] = None) -> PolynomialFamilyService:
    """
    Factory function to create a family service.

    Args:
        truncation_order: Highest buildable degree; defaults to APPELL_NMAX

    Returns:
        Family service instance
    """
    return PolynomialFamilyService(truncation_order)


_default_service: Optional[PolynomialFamilyService] = None
_default_lock = threading.Lock()


def default_service() -> PolynomialFamilyService:
    """Shared service at the configured truncation"""
    global _default_service
    with _default_lock:
        if _default_service is None or _default_service.truncation_order != config.appell_nmax:
            _default_service = create_family_service()
        return _default_service


def bernoulli(n: int) -> MultiPoly:
    return default_service().bernoulli(n)


def euler(n: int) -> MultiPoly:
    return default_service().euler(n)


def gen_bernoulli(n: int, order: VariableLike = Variable.M, arg: VariableLike = Variable.X) -> MultiPoly:
    return default_service().gen_bernoulli(n, order, arg)


def gen_euler(n: int, order: VariableLike = Variable.M, arg: VariableLike = Variable.X) -> MultiPoly:
    return default_service().gen_euler(n, order, arg)


def mixed_q(n: int) -> MultiPoly:
    return default_service().mixed_q(n)


def bernoulli_number(k: int) -> Fraction:
    return default_service().bernoulli_number(k)


def euler_member_at_zero(k: int) -> Fraction:
    return default_service().euler_member_at_zero(k)


def specialize_order(p: MultiPoly, bindings: Bindings) -> MultiPoly:
    return PolynomialFamilyService.specialize_order(p, bindings)
