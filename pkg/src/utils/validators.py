"""
Input Validation System for the Appell identity toolkit

This module validates command-line inputs: rational literals, degrees,
order bindings, output formats and output paths.
"""

import re
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from ..core.constants import FamilyKind, FileConstants, OutputFormat, ValidationConstants
from ..core.exceptions import ValidationError
from ..models.family_id import FamilyId
from ..utils.logger import logger


class InputValidator:
    """Validation of user supplied values"""

    @staticmethod
    def parse_rational(text: Union[str, int, Fraction], field: str = "value") -> Fraction:
        """
        Parse a rational literal written as 'p' or 'p/q'.

        Args:
            text: Raw literal; ints and Fractions pass through
            field: Name reported in the error

        Returns:
            The value in lowest terms

        Raises:
            ValidationError: If the literal is malformed or has a zero denominator
        """
        if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
            return Fraction(text)
        if not isinstance(text, str):
            raise ValidationError(
                ValidationConstants.ERROR_MESSAGES["INVALID_RATIONAL"],
                field_name=field,
                invalid_value=text
            )

        cleaned = text.strip()
        if not re.match(ValidationConstants.RATIONAL_PATTERN, cleaned):
            raise ValidationError(
                ValidationConstants.ERROR_MESSAGES["INVALID_RATIONAL"],
                field_name=field,
                invalid_value=text
            )

        numerator, _, denominator = cleaned.partition("/")
        if denominator and int(denominator) == 0:
            raise ValidationError(
                ValidationConstants.ERROR_MESSAGES["ZERO_DENOMINATOR"],
                field_name=field,
                invalid_value=text
            )
        value = Fraction(int(numerator), int(denominator or 1))
        logger.debug(f"Parsed {field} = {value}")
        return value

    @staticmethod
    def validate_degree(n: int, field: str = "n", maximum: Optional[int] = None) -> int:
        """
        Validate a polynomial degree.

        Raises:
            ValidationError: If n is negative, not an integer, or above maximum
        """
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ValidationError(
                ValidationConstants.ERROR_MESSAGES["NEGATIVE_DEGREE"],
                field_name=field,
                invalid_value=n
            )
        if maximum is not None and n > maximum:
            raise ValidationError(
                f"{field} must be at most {maximum}, got {n}",
                field_name=field,
                invalid_value=n
            )
        return n

    @staticmethod
    def validate_family_kind(kind: Union[str, FamilyKind]) -> FamilyKind:
        if isinstance(kind, FamilyKind):
            return kind
        try:
            return FamilyKind(str(kind).strip().lower())
        except ValueError:
            choices = ", ".join(k.value for k in FamilyKind)
            raise ValidationError(
                f"Unknown family '{kind}'. Choose one of: {choices}",
                field_name="kind",
                invalid_value=kind
            )

    @classmethod
    def validate_order_bindings(cls, kind: Union[str, FamilyKind],
                                m: Optional[Union[str, Fraction]] = None,
                                l: Optional[Union[str, Fraction]] = None) -> FamilyId:  # noqa: E741
        """
        Build a FamilyId from raw order bindings.

        Raises:
            ValidationError: If the kind is unknown, a literal is malformed or
                the kind does not take the given order
        """
        family_kind = cls.validate_family_kind(kind)
        m_value = None if m is None else cls.parse_rational(m, "m")
        l_value = None if l is None else cls.parse_rational(l, "l")
        return FamilyId(family_kind, m_value, l_value)

    @staticmethod
    def validate_output_format(fmt: Union[str, OutputFormat], tabular: bool) -> OutputFormat:
        """
        Raises:
            ValidationError: For an unknown format, or csv on a non-tabular command
        """
        try:
            output_format = fmt if isinstance(fmt, OutputFormat) else OutputFormat(str(fmt).lower())
        except ValueError:
            raise ValidationError(
                f"Unknown output format '{fmt}'",
                field_name="format",
                invalid_value=fmt
            )
        if output_format is OutputFormat.CSV and not tabular:
            raise ValidationError(
                ValidationConstants.ERROR_MESSAGES["CSV_NOT_TABULAR"],
                field_name="format",
                invalid_value=fmt
            )
        return output_format


class FileValidator:
    """Validator for file operations"""

    @staticmethod
    def validate_output_path(file_path: Union[str, Path]) -> Path:
        """
        Validate output file path.

        Args:
            file_path: File path to validate

        Returns:
            Validated Path object

        Raises:
            ValidationError: If path is invalid
        """
        try:
            path_obj = Path(file_path)
        except TypeError as e:
            raise ValidationError(
                f"Invalid file path: {str(e)}",
                field_name="file_path",
                invalid_value=str(file_path)
            )

        if path_obj.suffix not in FileConstants.SUPPORTED_OUTPUT_FORMATS:
            raise ValidationError(
                f"Unsupported file format. Supported: {FileConstants.SUPPORTED_OUTPUT_FORMATS}",
                field_name="file_path",
                invalid_value=path_obj.suffix
            )

        parent_dir = path_obj.parent
        if not parent_dir.exists():
            try:
                parent_dir.mkdir(parents=True, exist_ok=True)
            except OSError as e:
                raise ValidationError(
                    f"Cannot create output directory: {str(e)}",
                    field_name="file_path",
                    invalid_value=str(parent_dir)
                )

        return path_obj
