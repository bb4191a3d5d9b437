"""
Application Constants for the Appell identity toolkit

This module contains all constants used throughout the application
including family kinds, verification defaults, Monte-Carlo settings and UI elements.
"""

from enum import Enum

from colorama import Fore, Style


class FamilyKind(Enum):
    """Enumeration of the polynomial families the toolkit can build"""
    BERNOULLI = "bernoulli"
    EULER = "euler"
    GEN_BERNOULLI = "gen-bernoulli"
    GEN_EULER = "gen-euler"
    MIXED = "mixed"

    @property
    def is_classical(self) -> bool:
        """Classical families carry no order indeterminate"""
        return self in (FamilyKind.BERNOULLI, FamilyKind.EULER)


class OutputFormat(Enum):
    """Output formats understood by the command line"""
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


class SeriesConstants:
    """Power-series truncation defaults"""

    DEFAULT_NMAX = 24
    GOLDEN_TABLE_MAX = 32


class VerificationConstants:
    """Defaults for the identity suite"""

    DEFAULT_N_MAX = 12
    CLASSICAL_N_MAX = 20
    DEFAULT_WORKERS = 4


class MonteCarloConstants:
    """Defaults for the stochastic oracle"""

    DEFAULT_SAMPLES = 100_000
    DEFAULT_SEED = 42
    Z_THRESHOLD = 4.0
    CHUNK_SIZE = 65_536
    MAX_SEED = 2**64 - 1
    DEGENERATE_RTOL = 1e-9


class ExitCodes:
    """Process exit statuses of the command line"""

    SUCCESS = 0
    FAILURE = 1
    USAGE = 2


class UIConstants:
    """UI and display constants"""

    COLORS = {
        "RED": Fore.RED,
        "GREEN": Fore.GREEN,
        "YELLOW": Fore.YELLOW,
        "BLUE": Fore.BLUE,
        "MAGENTA": Fore.MAGENTA,
        "CYAN": Fore.CYAN,
        "WHITE": Fore.WHITE,
        "BOLD": Style.BRIGHT,
        "END": Style.RESET_ALL
    }

    STATUS_COLORS = {
        "pass": "GREEN",
        "fail": "RED",
        "error": "MAGENTA"
    }

    MAX_TABLE_CELL_WIDTH = 40


class FileConstants:
    """File and directory related constants"""

    SUPPORTED_OUTPUT_FORMATS = [".txt", ".json", ".csv"]
    LOGS_DIR = "logs"
    SCHEMA_DIR = "schemas"
    LOG_FILE_PATTERN = "appell_{date}.log"


class ValidationConstants:
    """Input validation constants"""

    RATIONAL_PATTERN = r'^[+-]?\d+(/\d+)?$'

    ERROR_MESSAGES = {
        "INVALID_RATIONAL": "Expected a rational written as 'p' or 'p/q'",
        "ZERO_DENOMINATOR": "Denominator must be nonzero",
        "NEGATIVE_DEGREE": "Degree must be a nonnegative integer",
        "ORDER_NOT_ALLOWED": "Family '{kind}' does not take an order binding for {order}",
        "CSV_NOT_TABULAR": "CSV output is only available for tabular commands"
    }


class LoggingConstants:
    """Logging configuration constants"""

    LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

    MAX_LOG_FILE_SIZE = 10 * 1024 * 1024  # 10MB
    BACKUP_COUNT = 5
