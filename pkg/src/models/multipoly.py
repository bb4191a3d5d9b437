"""
Exact Multivariate Polynomials for the Appell identity toolkit

This module defines the four-variable polynomial ring Q[m, l, x, y] used as the
universal value type: sparse canonical storage, exact arithmetic, Taylor shifts,
specialisation, differentiation, unit-interval integration and a lossless
text format.
"""

import re
from enum import Enum
from fractions import Fraction
from math import comb
from types import MappingProxyType
from typing import Dict, Iterable, Mapping, Optional, Set, Tuple, Union

from ..core.exceptions import PolynomialParseError, VariableError


class Variable(Enum):
    """The fixed, globally ordered variable universe"""
    M = "m"
    L = "l"
    X = "x"
    Y = "y"

    @property
    def index(self) -> int:
        """Position of the variable inside an exponent vector"""
        return _VARIABLE_INDEX[self]

    @classmethod
    def parse(cls, value: Union["Variable", str]) -> "Variable":
        """Accept a Variable or its one-letter name"""
        if isinstance(value, Variable):
            return value
        try:
            return cls(str(value).strip())
        except ValueError:
            raise VariableError(f"Unknown variable '{value}'", variable=str(value))


VARIABLES: Tuple[Variable, ...] = (Variable.M, Variable.L, Variable.X, Variable.Y)
_VARIABLE_INDEX = {var: i for i, var in enumerate(VARIABLES)}

# Term precedence when rendering: argument variables first, then orders.
_RENDER_PRIORITY = (Variable.X.index, Variable.Y.index, Variable.M.index, Variable.L.index)

Exponent = Tuple[int, int, int, int]
Scalar = Union[int, Fraction]
Bindings = Mapping[Union[Variable, str], Scalar]

_ZERO_EXPONENT: Exponent = (0, 0, 0, 0)


def _add_exponents(a: Exponent, b: Exponent) -> Exponent:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def _with_exponent(exp: Exponent, index: int, value: int) -> Exponent:
    as_list = list(exp)
    as_list[index] = value
    return tuple(as_list)  # type: ignore[return-value]


def _normalise_bindings(bindings: Bindings) -> Dict[Variable, Fraction]:
    return {Variable.parse(var): Fraction(value) for var, value in bindings.items()}


class MultiPoly:
    """
    Immutable sparse polynomial over the rationals in the indeterminates m, l, x, y.

    Terms map exponent vectors (e_m, e_l, e_x, e_y) to nonzero Fraction
    coefficients; equality is structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exponent, Scalar]] = None):
        cleaned: Dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)  # type: ignore[assignment]
            if len(exp) != len(VARIABLES) or any(e < 0 for e in exp):
                raise VariableError(f"Invalid exponent vector {exp}")
            value = Fraction(coeff)
            if value:
                cleaned[exp] = cleaned.get(exp, Fraction(0)) + value
        self._terms = {exp: c for exp, c in cleaned.items() if c}
        self._hash: Optional[int] = None

    @classmethod
    def _from_clean(cls, terms: Dict[Exponent, Fraction]) -> "MultiPoly":
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    # Constructors

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._from_clean({})

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls.constant(1)

    @classmethod
    def constant(cls, value: Scalar) -> "MultiPoly":
        value = Fraction(value)
        return cls._from_clean({_ZERO_EXPONENT: value} if value else {})

    @classmethod
    def var(cls, variable: Union[Variable, str], power: int = 1) -> "MultiPoly":
        variable = Variable.parse(variable)
        return cls._from_clean({_with_exponent(_ZERO_EXPONENT, variable.index, power): Fraction(1)})

    @classmethod
    def coerce(cls, value: Union["MultiPoly", Scalar]) -> "MultiPoly":
        """Promote an int or Fraction to a constant polynomial"""
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise TypeError(f"Cannot convert {type(value).__name__} to MultiPoly")

    # Inspection

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        """Read-only view of the term map"""
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(exp == _ZERO_EXPONENT for exp in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(_ZERO_EXPONENT, Fraction(0))

    def constant_value(self) -> Fraction:
        """
        Return the polynomial as a rational.

        Raises:
            VariableError: If the polynomial still depends on a variable
        """
        if not self.is_constant():
            raise VariableError(
                f"Polynomial '{self}' is not constant",
                variable=",".join(sorted(v.value for v in self.variables()))
            )
        return self.constant_term()

    def variables(self) -> Set[Variable]:
        found = set()
        for exp in self._terms:
            for var in VARIABLES:
                if exp[var.index]:
                    found.add(var)
        return found

    def degree(self, variable: Union[Variable, str]) -> int:
        """Degree in one variable; the zero polynomial has degree -1"""
        index = Variable.parse(variable).index
        return max((exp[index] for exp in self._terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(exp) for exp in self._terms), default=-1)

    def coefficient(self, variable: Union[Variable, str], power: int) -> "MultiPoly":
        """Coefficient of variable**power, as a polynomial in the other variables"""
        index = Variable.parse(variable).index
        return MultiPoly._from_clean({
            _with_exponent(exp, index, 0): c
            for exp, c in self._terms.items() if exp[index] == power
        })

    def leading_coefficient(self, variable: Union[Variable, str]) -> "MultiPoly":
        return self.coefficient(variable, self.degree(variable))

    # Arithmetic

    @staticmethod
    def _coerce_operand(other: object) -> Optional["MultiPoly"]:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MultiPoly.constant(other)
        return None

    def __add__(self, other: object) -> "MultiPoly":
        rhs = self._coerce_operand(other)
        if rhs is None:
            return NotImplemented
        result = dict(self._terms)
        for exp, c in rhs._terms.items():
            total = result.get(exp, 0) + c
            if total:
                result[exp] = total
            else:
                result.pop(exp, None)
        return MultiPoly._from_clean(result)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._from_clean({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other: object) -> "MultiPoly":
        rhs = self._coerce_operand(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "MultiPoly":
        lhs = self._coerce_operand(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def scale(self, factor: Scalar) -> "MultiPoly":
        factor = Fraction(factor)
        if not factor:
            return MultiPoly.zero()
        return MultiPoly._from_clean({exp: c * factor for exp, c in self._terms.items()})

    def __mul__(self, other: object) -> "MultiPoly":
        rhs = self._coerce_operand(other)
        if rhs is None:
            return NotImplemented
        if not self._terms or not rhs._terms:
            return MultiPoly.zero()
        if rhs.is_constant():
            return self.scale(rhs.constant_term())
        if self.is_constant():
            return rhs.scale(self.constant_term())

        result: Dict[Exponent, Fraction] = {}
        get = result.get
        for (a0, a1, a2, a3), ca in self._terms.items():
            for (b0, b1, b2, b3), cb in rhs._terms.items():
                key = (a0 + b0, a1 + b1, a2 + b2, a3 + b3)
                result[key] = get(key, 0) + ca * cb
        return MultiPoly._from_clean({exp: c for exp, c in result.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "MultiPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("polynomial division by zero")
            return self.scale(1 / Fraction(other))
        return NotImplemented

    def __pow__(self, power: int) -> "MultiPoly":
        if not isinstance(power, int) or power < 0:
            return NotImplemented
        result = MultiPoly.one()
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce_operand(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # Calculus and substitution

    def shift(self, variable: Union[Variable, str], delta: Union["MultiPoly", Scalar]) -> "MultiPoly":
        """
        Taylor shift: replace variable by variable + delta, expanded exactly.

        Raises:
            VariableError: If delta itself contains the shifted variable
        """
        variable = Variable.parse(variable)
        delta = MultiPoly.coerce(delta)
        if variable in delta.variables():
            raise VariableError(
                f"Shift delta '{delta}' must not contain {variable.value}",
                variable=variable.value
            )
        if delta.is_zero():
            return self

        index = variable.index
        top = self.degree(variable)
        powers = [MultiPoly.one()]
        for _ in range(top):
            powers.append(powers[-1] * delta)

        result: Dict[Exponent, Fraction] = {}
        get = result.get
        for exp, c in self._terms.items():
            e = exp[index]
            for j in range(e + 1):
                head = _with_exponent(exp, index, j)
                factor = c * comb(e, j)
                for dexp, dc in powers[e - j]._terms.items():
                    key = _add_exponents(head, dexp)
                    result[key] = get(key, 0) + factor * dc
        return MultiPoly._from_clean({exp: c for exp, c in result.items() if c})

    def evaluate(self, bindings: Bindings) -> "MultiPoly":
        """Substitute rationals for the bound variables"""
        values = _normalise_bindings(bindings)
        if not values:
            return self
        indices = [(var.index, value) for var, value in values.items()]

        result: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            factor = c
            reduced = list(exp)
            for index, value in indices:
                if exp[index]:
                    factor *= value ** exp[index]
                    reduced[index] = 0
            if factor:
                key = tuple(reduced)
                result[key] = result.get(key, 0) + factor  # type: ignore[index]
        return MultiPoly._from_clean({exp: c for exp, c in result.items() if c})

    def substitute(self, variable: Union[Variable, str], replacement: Union["MultiPoly", Scalar]) -> "MultiPoly":
        """Exact composition: p with variable := replacement"""
        variable = Variable.parse(variable)
        replacement = MultiPoly.coerce(replacement)
        result = MultiPoly.zero()
        power = MultiPoly.one()
        for k in range(self.degree(variable) + 1):
            if k:
                power = power * replacement
            part = self.coefficient(variable, k)
            if not part.is_zero():
                result = result + part * power
        return result

    def derivative(self, variable: Union[Variable, str]) -> "MultiPoly":
        index = Variable.parse(variable).index
        return MultiPoly._from_clean({
            _with_exponent(exp, index, exp[index] - 1): c * exp[index]
            for exp, c in self._terms.items() if exp[index]
        })

    def antiderivative(self, variable: Union[Variable, str]) -> "MultiPoly":
        """Antiderivative in variable with no variable-free terms"""
        index = Variable.parse(variable).index
        return MultiPoly._from_clean({
            _with_exponent(exp, index, exp[index] + 1): c / (exp[index] + 1)
            for exp, c in self._terms.items()
        })

    def integrate_unit(self, variable: Union[Variable, str]) -> "MultiPoly":
        """Definite integral over variable in [0, 1]"""
        variable = Variable.parse(variable)
        return self.antiderivative(variable).evaluate({variable: 1})

    # Text format

    def sorted_terms(self) -> Iterable[Tuple[Exponent, Fraction]]:
        """Terms in graded order with x, y ranked above m, l"""
        def key(item: Tuple[Exponent, Fraction]):
            exp = item[0]
            return (-sum(exp),) + tuple(-exp[i] for i in _RENDER_PRIORITY)
        return sorted(self._terms.items(), key=key)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for position, (exp, coeff) in enumerate(self.sorted_terms()):
            monomial = "*".join(
                var.value if exp[var.index] == 1 else f"{var.value}^{exp[var.index]}"
                for var in VARIABLES if exp[var.index]
            )
            magnitude = abs(coeff)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"

            if position == 0:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly('{self.to_text()}')"


_TERM_PATTERN = re.compile(r'[+-]?[^+-]+')
_RATIONAL_FACTOR = re.compile(r'^(\d+)(?:/(\d+))?$')
_VARIABLE_FACTOR = re.compile(r'^([mlxy])(?:\^(\d+))?$')


def parse_poly(text: str) -> MultiPoly:
    """
    Parse the canonical text format back into a MultiPoly.

    Raises:
        PolynomialParseError: If the text is not valid polynomial syntax
    """
    compact = "".join(str(text).split())
    if not compact:
        raise PolynomialParseError("Empty polynomial text", text=text)

    consumed = 0
    terms: Dict[Exponent, Fraction] = {}
    for match in _TERM_PATTERN.finditer(compact):
        if match.start() != consumed:
            raise PolynomialParseError(f"Unexpected sign in '{text}'", text=text)
        consumed = match.end()
        chunk = match.group(0)
        sign = -1 if chunk[0] == "-" else 1
        body = chunk[1:] if chunk[0] in "+-" else chunk

        coeff = Fraction(sign)
        exp = [0, 0, 0, 0]
        for factor in body.split("*"):
            rational = _RATIONAL_FACTOR.match(factor)
            variable = _VARIABLE_FACTOR.match(factor)
            if rational:
                denominator = int(rational.group(2) or 1)
                if denominator == 0:
                    raise PolynomialParseError(f"Zero denominator in '{text}'", text=text)
                coeff *= Fraction(int(rational.group(1)), denominator)
            elif variable:
                exp[Variable(variable.group(1)).index] += int(variable.group(2) or 1)
            else:
                raise PolynomialParseError(f"Cannot parse factor '{factor}' in '{text}'", text=text)
        key = tuple(exp)
        terms[key] = terms.get(key, Fraction(0)) + coeff  # type: ignore[index]

    if consumed != len(compact):
        raise PolynomialParseError(f"Trailing characters in '{text}'", text=text)
    return MultiPoly(terms)  # type: ignore[arg-type]
