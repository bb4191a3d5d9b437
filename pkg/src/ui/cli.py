"""
Command Line Interface for the Appell identity toolkit

Subcommands:
    family   print a family member (or members 0..n)
    eval     evaluate a member at a rational point
    verify   run one identity or the whole suite
    mc       Monte-Carlo check of the order-reduction property
    table    coefficient table of members 0..max_n
    numbers  Bernoulli numbers B_k(0) and Euler values E_k(0)

Command output goes to stdout, logs go to stderr. Exit status is 0 on
success, 1 on an identity failure or a Monte-Carlo rejection and 2 on usage
or precondition errors.
"""

import argparse
import sys
from typing import Callable, Dict, List, Optional, Tuple

from ..core.config_manager import config
from ..core.constants import (
    ExitCodes, FamilyKind, LoggingConstants, OutputFormat, SeriesConstants
)
from ..core.exceptions import EXIT_CODE_MAP, AppellBaseException, ValidationError
from ..models.monte_carlo import McConfig
from ..models.multipoly import Variable
from ..services.family_service import PolynomialFamilyService, create_family_service
from ..services.file_service import create_file_service
from ..services.identity_service import IdentityService
from ..services.monte_carlo_service import create_monte_carlo_service
from ..utils.logger import logger
from ..utils.validators import InputValidator
from .output_formatter import OutputFormatter, create_formatter

ALL_IDENTITIES = "all"

CommandResult = Tuple[str, int]


def _add_format(parser: argparse.ArgumentParser, tabular: bool = False, default: str = "text") -> None:
    choices = [f.value for f in OutputFormat if tabular or f is not OutputFormat.CSV]
    parser.add_argument("--format", choices=choices, default=default,
                        help=f"Output format (default: {default})")


def _add_orders(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", help="Rational binding for the order m (e.g. 7/3); symbolic if absent")
    parser.add_argument("--l", help="Rational binding for the order l (mixed family only)")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per command"""
    kinds = [k.value for k in FamilyKind]

    parser = argparse.ArgumentParser(
        prog="appell",
        description="Exact Appell families, generalized Bernoulli/Euler polynomials and identity checks."
    )
    parser.add_argument("--version", action="version", version=f"{config.app_name} {config.app_version}")
    parser.add_argument("--output", help="Also write the rendered output to this .txt/.json/.csv file")
    parser.add_argument("--log-level", choices=LoggingConstants.LOG_LEVELS,
                        help="Console log threshold (default: LOG_LEVEL or WARNING)")

    commands = parser.add_subparsers(dest="command", required=True)

    family = commands.add_parser("family", help="Print a family member")
    family.add_argument("kind", choices=kinds)
    family.add_argument("--n", type=int, required=True, help="Degree")
    family.add_argument("--all", action="store_true", help="Print members 0..n")
    _add_orders(family)
    _add_format(family)

    evaluate = commands.add_parser("eval", help="Evaluate a member at a rational point")
    evaluate.add_argument("kind", choices=kinds)
    evaluate.add_argument("--n", type=int, required=True, help="Degree")
    evaluate.add_argument("--x", required=True, help="Rational argument")
    _add_orders(evaluate)
    _add_format(evaluate)

    verify = commands.add_parser("verify", help="Run identity checks")
    verify.add_argument("--identity", default=None,
                        help=f"Identity name, or '{ALL_IDENTITIES}' (default)")
    verify.add_argument("--all", action="store_true", help="Run every registered identity")
    verify.add_argument("--max-n", type=int, default=None,
                        help="Highest degree checked (default: per identity)")
    verify.add_argument("--shift-count", type=int, default=None,
                        help="Number of independent shifts for the expectation identities")
    _add_format(verify)

    mc = commands.add_parser("mc", help="Monte-Carlo check of E[Q_n^(m)(x + S_l)] = Q_n^(m-l)(x)")
    mc.add_argument("kind", choices=[FamilyKind.BERNOULLI.value, FamilyKind.EULER.value])
    mc.add_argument("--n", type=int, required=True, help="Degree")
    mc.add_argument("--m", type=int, required=True, help="Integer order")
    mc.add_argument("--l", type=int, required=True, help="Number of shifts, at most m")
    mc.add_argument("--x", default="0", help="Rational base point (default: 0)")
    mc.add_argument("--samples", type=int, default=None, help="Sample count (default: MC_SAMPLES)")
    mc.add_argument("--seed", type=int, default=None, help="PRNG seed (default: MC_SEED)")
    _add_format(mc, default=OutputFormat.JSON.value)

    table = commands.add_parser("table", help="Coefficient table of members 0..max_n")
    table.add_argument("kind", choices=kinds)
    table.add_argument("--max-n", type=int, required=True, help="Highest degree")
    _add_orders(table)
    _add_format(table, tabular=True, default=OutputFormat.CSV.value)

    numbers = commands.add_parser("numbers", help="Bernoulli numbers and Euler values at zero")
    numbers.add_argument("--max-k", type=int, default=SeriesConstants.GOLDEN_TABLE_MAX,
                         help=f"Highest index (default: {SeriesConstants.GOLDEN_TABLE_MAX})")
    _add_format(numbers, tabular=True)

    return parser


class CommandRunner:
    """
    Dispatches parsed arguments to the services and renders the result.
    """

    def __init__(self, families: Optional[PolynomialFamilyService] = None,
                 formatter: Optional[OutputFormatter] = None):
        self.families = families or create_family_service()
        self.formatter = formatter or create_formatter()
        self.handlers: Dict[str, Callable[[argparse.Namespace], CommandResult]] = {
            "family": self.cmd_family,
            "eval": self.cmd_eval,
            "verify": self.cmd_verify,
            "mc": self.cmd_mc,
            "table": self.cmd_table,
            "numbers": self.cmd_numbers,
        }

    def run(self, args: argparse.Namespace) -> CommandResult:
        return self.handlers[args.command](args)

    @staticmethod
    def _format(args: argparse.Namespace, tabular: bool = False) -> OutputFormat:
        return InputValidator.validate_output_format(args.format, tabular)

    def cmd_family(self, args: argparse.Namespace) -> CommandResult:
        output_format = self._format(args)
        family_id = InputValidator.validate_order_bindings(args.kind, args.m, args.l)
        n = InputValidator.validate_degree(args.n, "n")

        if args.all:
            members = self.families.family_for(family_id).members(n)
            return self.formatter.render_members(family_id, members, output_format), ExitCodes.SUCCESS

        polynomial = self.families.member(family_id, n)
        return self.formatter.render_polynomial(family_id, n, polynomial, output_format), ExitCodes.SUCCESS

    def cmd_eval(self, args: argparse.Namespace) -> CommandResult:
        output_format = self._format(args)
        family_id = InputValidator.validate_order_bindings(args.kind, args.m, args.l)
        n = InputValidator.validate_degree(args.n, "n")
        bindings = {Variable.X: InputValidator.parse_rational(args.x, "x")}

        value = self.families.member(family_id, n).evaluate(bindings)
        all_bindings = {**family_id.bindings, **bindings}
        return self.formatter.render_value(family_id, n, all_bindings, value, output_format), ExitCodes.SUCCESS

    def cmd_verify(self, args: argparse.Namespace) -> CommandResult:
        output_format = self._format(args)
        service = IdentityService(self.families)
        if args.max_n is not None:
            InputValidator.validate_degree(args.max_n, "max_n")

        name = args.identity
        if args.all or name is None or name == ALL_IDENTITIES:
            if args.shift_count is not None:
                raise ValidationError("--shift-count applies to a single expectation identity",
                                      field_name="shift_count", invalid_value=args.shift_count)
            summary = service.verify_all(args.max_n)
            status = ExitCodes.SUCCESS if summary.all_passed else ExitCodes.FAILURE
            return self.formatter.render_summary(summary, output_format), status

        if args.shift_count is not None:
            report = service.verify_expectation(name, args.max_n, args.shift_count)
        else:
            report = service.verify(name, args.max_n)
        status = ExitCodes.SUCCESS if report.passed else ExitCodes.FAILURE
        return self.formatter.render_report(report, output_format), status

    def cmd_mc(self, args: argparse.Namespace) -> CommandResult:
        output_format = self._format(args)
        cfg = McConfig(
            n=args.n,
            m_int=args.m,
            shift_count=args.l,
            x0=InputValidator.parse_rational(args.x, "x"),
            samples=args.samples if args.samples is not None else config.mc_samples,
            seed=args.seed if args.seed is not None else config.mc_seed
        )
        service = create_monte_carlo_service(self.families)
        result = service.check(cfg, uniform=args.kind == FamilyKind.BERNOULLI.value)

        threshold = config.mc_z_threshold
        status = ExitCodes.SUCCESS if result.passed(threshold) else ExitCodes.FAILURE
        return self.formatter.render_mc(result, output_format, threshold), status

    def cmd_table(self, args: argparse.Namespace) -> CommandResult:
        output_format = self._format(args, tabular=True)
        family_id = InputValidator.validate_order_bindings(args.kind, args.m, args.l)
        max_n = InputValidator.validate_degree(args.max_n, "max_n")

        members = self.families.family_for(family_id).members(max_n)
        return self.formatter.render_coefficient_table(family_id, members, output_format), ExitCodes.SUCCESS

    def cmd_numbers(self, args: argparse.Namespace) -> CommandResult:
        output_format = self._format(args, tabular=True)
        max_k = InputValidator.validate_degree(args.max_k, "max_k")
        rows = self.families.golden_table(max_k)
        return self.formatter.render_numbers(rows, output_format), ExitCodes.SUCCESS


def _exit_code_for(error: AppellBaseException) -> int:
    for error_type, code in EXIT_CODE_MAP.items():
        if isinstance(error, error_type):
            return code
    return ExitCodes.FAILURE


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, run the command and return the exit status.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return ExitCodes.USAGE if exit_request.code else ExitCodes.SUCCESS

    if args.log_level:
        logger.set_console_level(args.log_level)

    formatter = create_formatter()
    try:
        logger.debug("Effective configuration", **config.get_all_config())
        output, status = CommandRunner(formatter=formatter).run(args)
        if args.output:
            saved = create_file_service().save_output(output, args.output)
            logger.info(f"Output written to {saved}")
    except AppellBaseException as e:
        code = _exit_code_for(e)
        logger.debug(f"Command {args.command} failed", error_code=e.error_code, context=e.context)
        print(formatter.format_error(str(e)), file=sys.stderr)
        return code

    print(output)
    return status
