"""
Logging System for the Appell identity toolkit

Console records go to stderr (stdout carries command output), colored by
level on a terminal. With ENABLE_DETAILED_LOGGING a rotating JSON log is
written under logs/ as well. Domain events (family builds, identity results,
Monte-Carlo checks, file writes, timings) carry an ``event_type`` field.
"""

import json
import logging
import logging.handlers
import sys
import time
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import colorama
from colorama import Fore, Style

from ..core.constants import FileConstants, LoggingConstants
from ..core.config_manager import config


colorama.just_fix_windows_console()

# Attributes every LogRecord has; anything else came in through ``extra``
_RECORD_FIELDS = set(vars(logging.makeLogRecord({}))) | {"message", "asctime", "taskName"}


class ColoredFormatter(logging.Formatter):
    """Colors the level name when stderr is a terminal"""

    LEVEL_COLORS = {
        logging.DEBUG: Fore.CYAN,
        logging.INFO: Fore.GREEN,
        logging.WARNING: Fore.YELLOW,
        logging.ERROR: Fore.RED,
        logging.CRITICAL: Fore.MAGENTA + Style.BRIGHT,
    }

    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        color = self.LEVEL_COLORS.get(record.levelno)
        if color is None or not (config.enable_color_output and sys.stderr.isatty()):
            return text
        return text.replace(record.levelname, f"{color}{record.levelname}{Style.RESET_ALL}", 1)


class StructuredFormatter(logging.Formatter):
    """One JSON object per record, extras included"""

    def format(self, record: logging.LogRecord) -> str:
        payload: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "where": f"{record.module}.{record.funcName}:{record.lineno}",
        }
        payload.update((k, v) for k, v in vars(record).items() if k not in _RECORD_FIELDS)
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False, default=str)


class AppellLogger:
    """Application logger with console and optional file handlers"""

    def __init__(self, name: str = "appell"):
        self.name = name
        self.logger = logging.getLogger(name)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        self.console_handler = self._find_console_handler()
        if self.console_handler is None:
            self.console_handler = self._add_console_handler()
            if config.enable_detailed_logging:
                self._add_file_handler()

    def _find_console_handler(self) -> Optional[logging.Handler]:
        for handler in self.logger.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
                return handler
        return None

    def _add_console_handler(self) -> logging.Handler:
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(self._level_from_name(config.log_level))
        handler.setFormatter(ColoredFormatter(LoggingConstants.LOG_FORMAT, LoggingConstants.DATE_FORMAT))
        self.logger.addHandler(handler)
        return handler

    def _add_file_handler(self) -> None:
        logs_dir = Path(FileConstants.LOGS_DIR)
        logs_dir.mkdir(parents=True, exist_ok=True)
        log_file = logs_dir / FileConstants.LOG_FILE_PATTERN.format(date=datetime.now().strftime("%Y%m"))

        handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=LoggingConstants.MAX_LOG_FILE_SIZE,
            backupCount=LoggingConstants.BACKUP_COUNT,
            encoding="utf-8",
        )
        handler.setLevel(logging.DEBUG)
        handler.setFormatter(StructuredFormatter())
        self.logger.addHandler(handler)

    @staticmethod
    def _level_from_name(level_name: str) -> int:
        level_name = str(level_name).upper()
        if level_name not in LoggingConstants.LOG_LEVELS:
            return logging.WARNING
        return getattr(logging, level_name)

    def set_console_level(self, level_name: str) -> None:
        """Change the console threshold (used by --log-level)"""
        self.console_handler.setLevel(self._level_from_name(level_name))

    def _event(self, level: int, event_type: str, message: str, **fields: Any) -> None:
        self.logger.log(level, message, extra={"event_type": event_type, **fields})

    def log_family_build(self, label: str, truncation: int, **kwargs) -> None:
        self._event(logging.DEBUG, "family_build", f"Built family {label} up to degree {truncation}",
                    label=label, truncation=truncation, **kwargs)

    def log_identity_result(self, identity: str, status: str, n_max: int,
                            elapsed: float, failing: Optional[List[int]] = None) -> None:
        """Pass at INFO, anything else at WARNING"""
        level = logging.INFO if status == "pass" else logging.WARNING
        self._event(level, "identity_result",
                    f"Identity {identity} n<={n_max}: {status} ({elapsed * 1000:.1f} ms)",
                    identity=identity, status=status, n_max=n_max, elapsed=elapsed,
                    failing_degrees=failing or [])

    def log_mc_result(self, family: str, z_score: float, samples: int, **kwargs) -> None:
        self._event(logging.INFO, "mc_result", f"Monte-Carlo {family}: z={z_score:.3f} over {samples} samples",
                    family=family, z_score=z_score, samples=samples, **kwargs)

    def log_file_operation(self, operation: str, file_path: str,
                           success: bool = True, file_size: Optional[int] = None,
                           **kwargs) -> None:
        if success:
            self._event(logging.INFO, "file_operation", f"{operation}: wrote {file_path}",
                        operation=operation, file_path=file_path, success=True, file_size=file_size, **kwargs)
        else:
            self._event(logging.ERROR, "file_operation", f"{operation}: could not write {file_path}",
                        operation=operation, file_path=file_path, success=False, **kwargs)

    def log_performance_metric(self, metric_name: str, value: float,
                               unit: str = "seconds", **kwargs) -> None:
        self._event(logging.DEBUG, "performance_metric", f"{metric_name} took {value:.6f} {unit}",
                    metric_name=metric_name, value=value, unit=unit, **kwargs)

    def debug(self, message: str, **kwargs: Any) -> None:
        self.logger.debug(message, extra=kwargs)

    def info(self, message: str, **kwargs: Any) -> None:
        self.logger.info(message, extra=kwargs)

    def warning(self, message: str, **kwargs: Any) -> None:
        self.logger.warning(message, extra=kwargs)

    def error(self, message: str, exc_info: bool = False, **kwargs: Any) -> None:
        self.logger.error(message, exc_info=exc_info, extra=kwargs)


class PerformanceTimer:
    """
    Context manager that logs the wall time of a block.

    A block that raises is logged at ERROR with the exception type; the
    exception itself propagates.
    """

    def __init__(self, logger: AppellLogger, operation_name: str, **context):
        self.logger = logger
        self.operation_name = operation_name
        self.context = context
        self.start_time: Optional[float] = None
        self.elapsed: float = 0.0

    def __enter__(self) -> "PerformanceTimer":
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        if self.start_time is None:
            return
        self.elapsed = time.perf_counter() - self.start_time
        if exc_type is None:
            self.logger.log_performance_metric(self.operation_name, self.elapsed, **self.context)
        else:
            self.logger.error(f"{self.operation_name} failed after {self.elapsed:.3f} s",
                              duration=self.elapsed, exception_type=exc_type.__name__, **self.context)


# Global logger instance
logger = AppellLogger()


def performance_timer(operation_name: str, **context) -> PerformanceTimer:
    """Time a block under ``operation_name``"""
    return PerformanceTimer(logger, operation_name, **context)
