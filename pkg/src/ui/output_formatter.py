"""
Output Formatter for the Appell identity toolkit

This module renders polynomials, identity reports, Monte-Carlo results and
coefficient tables as text, JSON or CSV. Colors are applied to text output
only, and only when stdout is a color capable terminal.
"""

import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.config_manager import config
from ..core.constants import OutputFormat, UIConstants
from ..models.family_id import FamilyId
from ..models.identity_report import IdentityReport, SuiteSummary
from ..models.monte_carlo import McResult
from ..models.multipoly import MultiPoly, Variable


@dataclass
class DisplayConfig:
    """Configuration for display formatting"""
    use_colors: bool = True

    def __post_init__(self):
        """Adjust settings based on terminal capabilities"""
        if not self._supports_color():
            self.use_colors = False

    def _supports_color(self) -> bool:
        """Check if terminal supports colors"""
        return (
            hasattr(sys.stdout, 'isatty') and
            sys.stdout.isatty() and
            os.getenv('TERM') != 'dumb' and
            config.enable_color_output
        )


class OutputFormatter:
    """
    Renders command results in the requested output format.

    Every render_* method returns the full output as a string without a
    trailing newline; the caller owns printing or saving it.
    """

    def __init__(self, display_config: Optional[DisplayConfig] = None):
        """
        Initialize output formatter.

        Args:
            display_config: Display configuration settings
        """
        self.config = display_config or DisplayConfig()
        self.colors = UIConstants.COLORS if self.config.use_colors else {}
        self.reset = self.colors.get("END", "")

    def colorize(self, text: str, color: str) -> str:
        """
        Apply color to text.

        Args:
            text: Text to colorize
            color: Color name from UIConstants.COLORS

        Returns:
            Colorized text
        """
        if not self.config.use_colors or color not in self.colors:
            return text

        return f"{self.colors[color]}{text}{self.reset}"

    def bold(self, text: str) -> str:
        """Make text bold"""
        if not self.config.use_colors:
            return text
        return f"{self.colors.get('BOLD', '')}{text}{self.reset}"

    def format_table(self, headers: List[str], rows: List[List[str]],
                     column_widths: Optional[List[int]] = None) -> str:
        """
        Format data as a table.

        Args:
            headers: Table headers
            rows: Table rows
            column_widths: Optional column widths

        Returns:
            Formatted table
        """
        if not rows:
            return "No data to display"

        if column_widths is None:
            column_widths = []
            for i in range(len(headers)):
                max_width = len(headers[i])
                for row in rows:
                    if i < len(row):
                        max_width = max(max_width, len(str(row[i])))
                column_widths.append(min(max_width, UIConstants.MAX_TABLE_CELL_WIDTH))

        lines = []

        header_line = " | ".join(
            f"{header:<{width}}" for header, width in zip(headers, column_widths)
        )
        lines.append(self.bold(header_line.rstrip()))

        lines.append("-+-".join("-" * width for width in column_widths))

        for row in rows:
            padded = list(row) + [""] * (len(column_widths) - len(row))
            row_line = " | ".join(
                f"{str(cell):<{width}}" for cell, width in zip(padded, column_widths)
            )
            lines.append(row_line.rstrip())

        return "\n".join(lines)

    def format_status(self, status: str) -> str:
        color = UIConstants.STATUS_COLORS.get(status, "WHITE")
        return self.colorize(status.upper(), color)

    def format_error(self, error: str, context: Optional[str] = None) -> str:
        """Format error message"""
        error_text = f"error: {error}"
        if context:
            error_text += f" ({context})"

        return self.colorize(error_text, "RED")

    @staticmethod
    def _dump(data: Any) -> str:
        return json.dumps(data, indent=2, ensure_ascii=False)

    # Polynomials

    def render_polynomial(self, family_id: FamilyId, n: int, polynomial: MultiPoly,
                          output_format: OutputFormat) -> str:
        if output_format is OutputFormat.JSON:
            return self._dump({
                "family": family_id.to_dict(),
                "n": n,
                "polynomial": polynomial.to_text()
            })
        return polynomial.to_text()

    def render_members(self, family_id: FamilyId, members: Sequence[MultiPoly],
                       output_format: OutputFormat) -> str:
        """Members 0..n, one per line in text output"""
        if output_format is OutputFormat.JSON:
            return self._dump({
                "family": family_id.to_dict(),
                "members": [{"n": n, "polynomial": p.to_text()} for n, p in enumerate(members)]
            })
        return "\n".join(p.to_text() for p in members)

    def render_value(self, family_id: FamilyId, n: int, bindings: Dict[Variable, Fraction],
                     value: MultiPoly, output_format: OutputFormat) -> str:
        if output_format is OutputFormat.JSON:
            return self._dump({
                "family": family_id.to_dict(),
                "n": n,
                "bindings": {var.value: str(v) for var, v in bindings.items()},
                "value": value.to_text()
            })
        return value.to_text()

    # Identity reports

    def _report_lines(self, report: IdentityReport) -> List[str]:
        low, high = report.n_range
        line = f"{self.format_status(report.status.value):<6} {report.identity}  n={low}..{high}"
        if report.shift_count is not None:
            line += f"  shifts={report.shift_count}"
        lines = [f"{line}  ({report.elapsed_ms:.1f} ms)"]
        for n, parts in report.residuals.items():
            for i in report.failing_parts(n):
                label = f"n={n}" if len(parts) == 1 else f"n={n} part {i}"
                lines.append(f"    {label}: residual {parts[i].to_text()}")
        if report.error is not None:
            lines.append(f"    {self.colorize(report.error, 'MAGENTA')}")
        return lines

    def render_report(self, report: IdentityReport, output_format: OutputFormat) -> str:
        if output_format is OutputFormat.JSON:
            return self._dump(report.to_dict())
        return "\n".join(self._report_lines(report))

    def render_summary(self, summary: SuiteSummary, output_format: OutputFormat) -> str:
        if output_format is OutputFormat.JSON:
            return self._dump(summary.to_dict())

        lines: List[str] = []
        for report in summary.reports:
            lines.extend(self._report_lines(report))
        footer = f"{summary.passed_count}/{summary.total} identities passed"
        lines.append(self.bold(self.colorize(footer, "GREEN" if summary.all_passed else "RED")))
        return "\n".join(lines)

    # Monte-Carlo

    def render_mc(self, result: McResult, output_format: OutputFormat,
                  threshold: Optional[float] = None) -> str:
        if output_format is OutputFormat.JSON:
            return self._dump(result.to_dict())

        cfg = result.config
        passed = result.passed(threshold) if threshold is not None else result.passed()
        rows = [
            ["family", result.family],
            ["n, m, l", f"{cfg.n}, {cfg.m_int}, {cfg.shift_count}"],
            ["x0", str(cfg.x0)],
            ["samples", str(cfg.samples)],
            ["seed", str(cfg.seed)],
            ["estimate", f"{result.estimate:.12g}"],
            ["std_error", f"{result.std_error:.6g}"],
            ["exact", f"{result.exact} (~{float(result.exact):.12g})"],
            ["z_score", f"{result.z_score:.4g}"],
        ]
        status = self.format_status("pass" if passed else "fail")
        return self.format_table(["field", "value"], rows) + f"\n{status}"

    # Tables

    @staticmethod
    def _cell(coefficient: MultiPoly) -> Any:
        # Constant cells are written as bare rationals, polynomial cells get quoted
        if coefficient.is_constant():
            return coefficient.constant_value()
        return coefficient.to_text()

    @staticmethod
    def _write_csv(rows: Sequence[Sequence[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        writer.writerows(rows)
        return buffer.getvalue().rstrip("\n")

    def render_coefficient_table(self, family_id: FamilyId, members: Sequence[MultiPoly],
                                 output_format: OutputFormat,
                                 arg: Variable = Variable.X) -> str:
        """
        Row n holds the coefficients of arg^0..arg^n of member n.
        """
        coefficient_rows = [
            [p.coefficient(arg, k) for k in range(n + 1)] for n, p in enumerate(members)
        ]

        if output_format is OutputFormat.CSV:
            return self._write_csv(
                [[n] + [self._cell(c) for c in row] for n, row in enumerate(coefficient_rows)]
            )

        if output_format is OutputFormat.JSON:
            return self._dump({
                "family": family_id.to_dict(),
                "rows": [
                    {"n": n, "coefficients": [c.to_text() for c in row]}
                    for n, row in enumerate(coefficient_rows)
                ]
            })

        headers = ["n"] + [f"{arg.value}^{k}" for k in range(len(members))]
        rows = [[str(n)] + [c.to_text() for c in row] for n, row in enumerate(coefficient_rows)]
        return self.format_table(headers, rows)

    def render_numbers(self, rows: Sequence[Tuple[int, Fraction, Fraction]],
                       output_format: OutputFormat) -> str:
        """Rows of (k, B_k(0), E_k(0))"""
        if output_format is OutputFormat.CSV:
            return self._write_csv([[k, b, e] for k, b, e in rows])

        if output_format is OutputFormat.JSON:
            return self._dump({
                "rows": [{"k": k, "bernoulli": str(b), "euler": str(e)} for k, b, e in rows]
            })

        return self.format_table(["k", "B_k(0)", "E_k(0)"],
                                 [[str(k), str(b), str(e)] for k, b, e in rows])


# Factory function for creating formatter
def create_formatter(use_colors: Optional[bool] = None) -> OutputFormatter:
    """
    Factory function to create output formatter.

    Args:
        use_colors: Force colors on or off; ENABLE_COLOR_OUTPUT by default

    Returns:
        OutputFormatter instance
    """
    display_config = DisplayConfig(
        use_colors=config.enable_color_output if use_colors is None else use_colors
    )
    return OutputFormatter(display_config)
