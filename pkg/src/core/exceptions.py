"""
Custom Exception Classes for the Appell identity toolkit

This module defines all custom exceptions used throughout the application
to provide specific error handling and meaningful error messages.
"""

from typing import Optional, Dict, Any


class AppellBaseException(Exception):
    """Base exception class for all toolkit specific exceptions"""

    def __init__(self, message: str, error_code: Optional[str] = None,
                 context: Optional[Dict[str, Any]] = None):
        """
        Initialize base exception.

        Args:
            message: Human readable error message
            error_code: Optional error code for programmatic handling
            context: Additional context information
        """
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.context = context or {}

    def __str__(self) -> str:
        """Return string representation of the exception"""
        if self.error_code:
            return f"[{self.error_code}] {self.message}"
        return self.message


class ConfigurationError(AppellBaseException):
    """Raised when there are configuration-related errors"""

    def __init__(self, message: str, config_key: Optional[str] = None):
        super().__init__(
            message,
            error_code="CONFIG_ERROR",
            context={"config_key": config_key}
        )


class ValidationError(AppellBaseException):
    """Raised when user input validation fails"""

    def __init__(self, message: str, field_name: Optional[str] = None,
                 invalid_value: Optional[Any] = None):
        super().__init__(
            message,
            error_code="VALIDATION_ERROR",
            context={
                "field_name": field_name,
                "invalid_value": None if invalid_value is None else str(invalid_value)
            }
        )
        self.field_name = field_name


class PreconditionError(AppellBaseException):
    """Raised when an operation's precondition does not hold"""

    def __init__(self, message: str, operation: Optional[str] = None,
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(
            message,
            error_code="PRECONDITION_ERROR",
            context={"operation": operation, **(details or {})}
        )
        self.operation = operation


class TruncationError(AppellBaseException):
    """Raised when a degree beyond the available series truncation is requested"""

    def __init__(self, requested: int, available: int, label: Optional[str] = None):
        where = f" in {label}" if label else ""
        super().__init__(
            f"Degree {requested} requested{where} but series are truncated at {available}",
            error_code="TRUNCATION_ERROR",
            context={"requested": requested, "available": available, "label": label}
        )
        self.requested = requested
        self.available = available


class VariableError(AppellBaseException):
    """Raised when polynomial variables are used inconsistently"""

    def __init__(self, message: str, variable: Optional[str] = None):
        super().__init__(
            message,
            error_code="VARIABLE_ERROR",
            context={"variable": variable}
        )


class PolynomialParseError(AppellBaseException):
    """Raised when text is not in the canonical polynomial syntax"""

    def __init__(self, message: str, text: Optional[str] = None):
        super().__init__(
            message,
            error_code="PARSE_ERROR",
            context={"text": text}
        )


class UnknownIdentityError(AppellBaseException):
    """Raised when an identity name is not in the registry"""

    def __init__(self, name: str):
        super().__init__(
            f"Unknown identity '{name}'",
            error_code="UNKNOWN_IDENTITY",
            context={"name": name}
        )
        self.name = name


class FileOperationError(AppellBaseException):
    """Raised when file operations fail"""

    def __init__(self, message: str, file_path: Optional[str] = None,
                 operation: Optional[str] = None):
        super().__init__(
            message,
            error_code="FILE_OPERATION_ERROR",
            context={
                "file_path": file_path,
                "operation": operation
            }
        )


# Exit status per exception type, used by the command line
EXIT_CODE_MAP = {
    ConfigurationError: 2,
    ValidationError: 2,
    PreconditionError: 2,
    TruncationError: 2,
    VariableError: 2,
    PolynomialParseError: 2,
    UnknownIdentityError: 2,
    FileOperationError: 1
}
