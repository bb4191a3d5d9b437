"""
Appell Family Model

An Appell family Q_0, Q_1, ... is fixed by its base values c_k = Q_k(0);
members are produced on demand through the binomial form
Q_n(arg) = sum_k C(n, k) c_k arg^(n-k) and memoised.
"""

import threading
from math import comb
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ..core.exceptions import PreconditionError, TruncationError, VariableError
from .multipoly import Bindings, MultiPoly, Scalar, Variable


class AppellFamily:
    """
    Lazily extended Appell sequence over a fixed argument variable.

    Immutable apart from the member memo, which is filled idempotently
    under a lock.
    """

    __slots__ = ("_base", "_arg", "_label", "_memo", "_lock")

    def __init__(self, base: Sequence[MultiPoly], argument_variable: Union[Variable, str],
                 label: str):
        """
        Args:
            base: c_0, c_1, ..., c_N with c_k = Q_k(0); c_0 must be 1
            argument_variable: x or y
            label: Short name used in logs and errors
        """
        arg = Variable.parse(argument_variable)
        if arg not in (Variable.X, Variable.Y):
            raise VariableError(f"Argument variable must be x or y, got {arg.value}", variable=arg.value)
        base = tuple(MultiPoly.coerce(c) for c in base)
        if not base or base[0] != 1:
            raise PreconditionError(
                f"Family {label} must start with c_0 = 1",
                operation="AppellFamily",
                details={"c_0": str(base[0]) if base else None}
            )
        for c in base:
            if arg in c.variables():
                raise VariableError(
                    f"Base values of {label} must not contain the argument {arg.value}",
                    variable=arg.value
                )
        self._base: Tuple[MultiPoly, ...] = base
        self._arg = arg
        self._label = label
        self._memo: Dict[int, MultiPoly] = {}
        self._lock = threading.Lock()

    @property
    def base(self) -> Tuple[MultiPoly, ...]:
        return self._base

    @property
    def argument_variable(self) -> Variable:
        return self._arg

    @property
    def label(self) -> str:
        return self._label

    @property
    def max_degree(self) -> int:
        return len(self._base) - 1

    def base_value(self, k: int) -> MultiPoly:
        """c_k = Q_k(0)"""
        self._check_degree(k)
        return self._base[k]

    def _check_degree(self, n: int) -> None:
        if n < 0 or n > self.max_degree:
            raise TruncationError(n, self.max_degree, self._label)

    def member(self, n: int) -> MultiPoly:
        """
        Q_n as a polynomial in the argument variable.

        Raises:
            TruncationError: If n exceeds the family's truncation
        """
        self._check_degree(n)
        with self._lock:
            cached = self._memo.get(n)
        if cached is not None:
            return cached

        index = self._arg.index
        terms = {}
        for k in range(n + 1):
            weight = comb(n, k)
            for exp, c in self._base[k].terms.items():
                key = list(exp)
                key[index] += n - k
                key = tuple(key)
                terms[key] = terms.get(key, 0) + c * weight
        value = MultiPoly(terms)

        with self._lock:
            return self._memo.setdefault(n, value)

    def members(self, n_max: int) -> List[MultiPoly]:
        return [self.member(n) for n in range(n_max + 1)]

    def shifted(self, deltas: Mapping[Union[Variable, str], Union[MultiPoly, Scalar]],
                label: Optional[str] = None) -> "AppellFamily":
        """Family whose order indeterminates are Taylor-shifted by the given deltas"""
        base = self._base
        for var, delta in deltas.items():
            if MultiPoly.coerce(delta).is_zero():
                continue
            base = tuple(c.shift(var, delta) for c in base)
        return AppellFamily(base, self._arg, label or self._label)

    def specialized(self, bindings: Bindings, label: Optional[str] = None) -> "AppellFamily":
        """Family with order indeterminates bound to rationals"""
        return AppellFamily(tuple(c.evaluate(bindings) for c in self._base),
                            self._arg, label or self._label)

    def with_argument(self, argument_variable: Union[Variable, str]) -> "AppellFamily":
        """Same base values over another argument variable"""
        return AppellFamily(self._base, argument_variable, self._label)

    def __repr__(self) -> str:
        return f"AppellFamily(label={self._label!r}, arg={self._arg.value}, max_degree={self.max_degree})"
