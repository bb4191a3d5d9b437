"""
Configuration Manager for the Appell identity toolkit

Settings come from the process environment, optionally seeded from a .env
file. They are read on every access, so a changed environment takes effect
without rebuilding the manager.
"""

import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, TypeVar

from dotenv import load_dotenv

from .constants import SeriesConstants, VerificationConstants, MonteCarloConstants
from .exceptions import ConfigurationError

T = TypeVar("T")

_TRUE_VALUES = ("true", "1", "yes", "on")


class ConfigManager:
    """Typed access to the toolkit's environment settings"""

    def __init__(self, env_file: str = ".env"):
        """
        Args:
            env_file: .env file loaded if present; existing variables win
        """
        self.env_file = env_file
        if Path(env_file).exists():
            load_dotenv(env_file)
            logging.getLogger("appell").debug(f"Environment loaded from {env_file}")

    def get(self, key: str, default: Any = None) -> Any:
        return os.getenv(key, default)

    def _typed(self, key: str, default: T, cast: Callable[[str], T]) -> T:
        # Unparsable values fall back to the default
        raw = self.get(key)
        if raw is None:
            return default
        try:
            return cast(raw)
        except (TypeError, ValueError):
            return default

    def get_int(self, key: str, default: int = 0) -> int:
        return self._typed(key, default, int)

    def get_float(self, key: str, default: float = 0.0) -> float:
        return self._typed(key, default, float)

    def get_bool(self, key: str, default: bool = False) -> bool:
        return self._typed(key, default, lambda raw: raw.strip().lower() in _TRUE_VALUES)

    @property
    def app_name(self) -> str:
        return self.get("APP_NAME", "appell-identities")

    @property
    def app_version(self) -> str:
        return self.get("APP_VERSION", "1.0.0")

    @property
    def log_level(self) -> str:
        """Console log level name"""
        return self.get("LOG_LEVEL", "WARNING")

    @property
    def output_directory(self) -> Path:
        """Directory for bare --output file names"""
        return Path(self.get("OUTPUT_DIRECTORY", "./outputs"))

    @property
    def appell_nmax(self) -> int:
        """
        Series truncation order shared by every family.

        Raises:
            ConfigurationError: If APPELL_NMAX is not a positive integer
        """
        raw = self.get("APPELL_NMAX")
        if raw is None:
            return SeriesConstants.DEFAULT_NMAX
        try:
            value = int(raw)
        except ValueError:
            raise ConfigurationError(
                f"APPELL_NMAX must be a positive integer, got '{raw}'",
                config_key="APPELL_NMAX"
            )
        if value < 1:
            raise ConfigurationError(
                f"APPELL_NMAX must be at least 1, got {value}",
                config_key="APPELL_NMAX"
            )
        return value

    @property
    def verify_workers(self) -> int:
        """Thread pool size for running the identity suite"""
        return max(1, self.get_int("VERIFY_WORKERS", VerificationConstants.DEFAULT_WORKERS))

    @property
    def mc_samples(self) -> int:
        """Default Monte-Carlo sample count"""
        return self.get_int("MC_SAMPLES", MonteCarloConstants.DEFAULT_SAMPLES)

    @property
    def mc_seed(self) -> int:
        """Default Monte-Carlo seed"""
        return self.get_int("MC_SEED", MonteCarloConstants.DEFAULT_SEED)

    @property
    def mc_z_threshold(self) -> float:
        """|z| threshold above which a Monte-Carlo check fails"""
        return self.get_float("MC_Z_THRESHOLD", MonteCarloConstants.Z_THRESHOLD)

    @property
    def mc_chunk_size(self) -> int:
        """Samples drawn per PRNG substream"""
        return max(1, self.get_int("MC_CHUNK_SIZE", MonteCarloConstants.CHUNK_SIZE))

    @property
    def enable_detailed_logging(self) -> bool:
        """Check if JSON file logging is enabled"""
        return self.get_bool("ENABLE_DETAILED_LOGGING", False)

    @property
    def enable_color_output(self) -> bool:
        """Check if color output is enabled"""
        return self.get_bool("ENABLE_COLOR_OUTPUT", True)

    def get_all_config(self) -> Dict[str, Any]:
        """
        Get all configuration as dictionary.

        Returns:
            Dictionary of configuration values
        """
        return {
            "app_name": self.app_name,
            "app_version": self.app_version,
            "log_level": self.log_level,
            "output_directory": str(self.output_directory),
            "appell_nmax": self.appell_nmax,
            "verify_workers": self.verify_workers,
            "mc_samples": self.mc_samples,
            "mc_seed": self.mc_seed,
            "mc_z_threshold": self.mc_z_threshold,
            "mc_chunk_size": self.mc_chunk_size,
            "enable_detailed_logging": self.enable_detailed_logging,
            "enable_color_output": self.enable_color_output
        }


# Global configuration instance
config = ConfigManager()
