"""
File Service for the Appell identity toolkit

This module writes rendered command output (polynomials, reports, tables)
to disk with proper error handling.
"""

from pathlib import Path
from typing import Optional, Union

from ..core.config_manager import config
from ..core.exceptions import FileOperationError
from ..utils.logger import logger, performance_timer
from ..utils.validators import FileValidator


class FileService:
    """
    Writes command output files; bare file names resolve under the output directory.
    """

    def __init__(self, output_dir: Optional[Path] = None):
        """
        Initialize file service.

        Args:
            output_dir: Directory for bare file names; OUTPUT_DIRECTORY by default
        """
        self.output_dir = Path(output_dir) if output_dir is not None else config.output_directory
        logger.debug(f"File service initialized with output directory: {self.output_dir}")

    def resolve_path(self, file_path: Union[str, Path]) -> Path:
        path = Path(file_path)
        if path.parent == Path("."):
            return self.output_dir / path.name
        return path

    def save_output(self, text: str, file_path: Union[str, Path]) -> Path:
        """
        Save rendered output as a UTF-8 file with a trailing newline.

        Args:
            text: Rendered command output
            file_path: Target path, or a bare name placed in the output directory

        Returns:
            Path to saved file

        Raises:
            ValidationError: If the suffix is not .txt, .json or .csv
            FileOperationError: If the write fails
        """
        output_path = FileValidator.validate_output_path(self.resolve_path(file_path))
        content = text if text.endswith("\n") else text + "\n"

        try:
            with performance_timer("save_output", file_path=str(output_path)):
                with open(output_path, "w", encoding="utf-8", newline="") as f:
                    f.write(content)

            logger.log_file_operation(
                operation="save_output",
                file_path=str(output_path),
                success=True,
                file_size=output_path.stat().st_size
            )
            return output_path

        except OSError as e:
            logger.log_file_operation(
                operation="save_output",
                file_path=str(output_path),
                success=False,
                error=str(e)
            )
            raise FileOperationError(
                f"Failed to save output file: {str(e)}",
                file_path=str(output_path),
                operation="save_output"
            )


# Factory function for creating file service
def create_file_service(output_dir: Optional[Path] = None) -> FileService:
    """
    Factory function to create file service.

    Returns:
        File service instance
    """
    return FileService(output_dir)
