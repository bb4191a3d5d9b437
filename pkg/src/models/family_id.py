"""
Family identifiers: which polynomial family, and which orders are bound.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Optional

from ..core.constants import FamilyKind, ValidationConstants
from ..core.exceptions import ValidationError
from .multipoly import Variable


@dataclass(frozen=True)
class FamilyId:
    """
    A family kind plus optional rational bindings for its orders.

    An absent binding leaves the order symbolic. Classical families take no
    orders, the generalized families take m only and the mixed family takes
    m and l.
    """
    kind: FamilyKind
    m: Optional[Fraction] = None
    l: Optional[Fraction] = None  # noqa: E741

    def __post_init__(self):
        if not isinstance(self.kind, FamilyKind):
            object.__setattr__(self, "kind", FamilyKind(self.kind))
        for name in ("m", "l"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, Fraction(value))

        allowed = self.allowed_orders(self.kind)
        for name in ("m", "l"):
            if getattr(self, name) is not None and name not in allowed:
                raise ValidationError(
                    ValidationConstants.ERROR_MESSAGES["ORDER_NOT_ALLOWED"].format(
                        kind=self.kind.value, order=name
                    ),
                    field_name=name,
                    invalid_value=getattr(self, name)
                )

    @staticmethod
    def allowed_orders(kind: FamilyKind) -> tuple:
        if kind.is_classical:
            return ()
        if kind is FamilyKind.MIXED:
            return ("m", "l")
        return ("m",)

    @property
    def bindings(self) -> Dict[Variable, Fraction]:
        """Order bindings as a poly_eval mapping"""
        result = {}
        if self.m is not None:
            result[Variable.M] = self.m
        if self.l is not None:
            result[Variable.L] = self.l
        return result

    @property
    def is_symbolic(self) -> bool:
        """True while at least one allowed order is unbound"""
        return any(getattr(self, name) is None for name in self.allowed_orders(self.kind))

    @property
    def label(self) -> str:
        parts = [f"{name}={getattr(self, name)}" for name in ("m", "l") if getattr(self, name) is not None]
        return self.kind.value + (f"[{', '.join(parts)}]" if parts else "")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "m": None if self.m is None else str(self.m),
            "l": None if self.l is None else str(self.l)
        }
