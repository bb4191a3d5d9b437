"""
Data Models for identity verification results

An IdentityReport records the outcome of checking one named identity over a
degree range, keeping the exact residual polynomial of every failing degree.
"""

import json
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .multipoly import MultiPoly


class IdentityStatus(Enum):
    """Enumeration of verification outcomes"""
    PASS = "pass"
    FAIL = "fail"
    ERROR = "error"


@dataclass
class IdentityReport:
    """
    Outcome of one identity over the inclusive range n_range.

    A checker may compare several independent parts at one degree, so each
    degree maps to its residual parts, positionally. residuals only holds
    degrees where some part is nonzero; status is pass iff it is empty and
    no error was raised by the checker.
    """
    identity: str
    n_range: Tuple[int, int]
    residuals: Dict[int, Union[MultiPoly, Sequence[MultiPoly]]] = field(default_factory=dict)
    elapsed: float = 0.0
    shift_count: Optional[int] = None
    error: Optional[str] = None

    def __post_init__(self):
        parts = {
            n: (r,) if isinstance(r, MultiPoly) else tuple(r)
            for n, r in sorted(self.residuals.items())
        }
        self.residuals = {n: p for n, p in parts.items() if any(not r.is_zero() for r in p)}

    @property
    def status(self) -> IdentityStatus:
        if self.error is not None:
            return IdentityStatus.ERROR
        return IdentityStatus.FAIL if self.residuals else IdentityStatus.PASS

    @property
    def passed(self) -> bool:
        return self.status is IdentityStatus.PASS

    @property
    def failing_degrees(self) -> List[int]:
        return list(self.residuals)

    def residual(self, n: int, part: int = 0) -> MultiPoly:
        """Residual of one part at degree n; zero for passing degrees"""
        parts = self.residuals.get(n, ())
        return parts[part] if part < len(parts) else MultiPoly.zero()

    def failing_parts(self, n: int) -> List[int]:
        return [i for i, r in enumerate(self.residuals.get(n, ())) if not r.is_zero()]

    @property
    def elapsed_ms(self) -> float:
        return round(self.elapsed * 1000.0, 3)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization"""
        data: Dict[str, Any] = {
            "identity": self.identity,
            "n_range": list(self.n_range),
            "status": self.status.value,
            "residuals": [
                {"n": n, "part": i, "polynomial": residual.to_text()}
                for n, parts in self.residuals.items()
                for i, residual in enumerate(parts) if not residual.is_zero()
            ],
            "elapsed_ms": self.elapsed_ms
        }
        if self.shift_count is not None:
            data["shift_count"] = self.shift_count
        if self.error is not None:
            data["error"] = self.error
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)


@dataclass
class SuiteSummary:
    """
    Reports of a full suite run, kept in registry order.
    """
    reports: List[IdentityReport] = field(default_factory=list)
    started_at: datetime = field(default_factory=datetime.now)

    @property
    def total(self) -> int:
        return len(self.reports)

    @property
    def passed_count(self) -> int:
        return sum(1 for report in self.reports if report.passed)

    @property
    def failed(self) -> List[IdentityReport]:
        return [report for report in self.reports if not report.passed]

    @property
    def all_passed(self) -> bool:
        return not self.failed

    @property
    def elapsed(self) -> float:
        return sum(report.elapsed for report in self.reports)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "reports": [report.to_dict() for report in self.reports],
            "total": self.total,
            "passed": self.passed_count,
            "failed": [report.identity for report in self.failed],
            "all_passed": self.all_passed,
            "started_at": self.started_at.isoformat()
        }
