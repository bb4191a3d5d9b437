import pytest

from src.core.exceptions import FileOperationError, ValidationError
from src.services.file_service import create_file_service


class TestSaveOutput:
    def test_bare_name_goes_to_output_directory(self, tmp_path):
        service = create_file_service(tmp_path / "out")
        saved = service.save_output("0,1", "euler.csv")
        assert saved == tmp_path / "out" / "euler.csv"
        assert saved.read_text(encoding="utf-8") == "0,1\n"

    def test_default_directory_from_environment(self, tmp_path):
        saved = create_file_service().save_output("x - 1/2", "b1.txt")
        assert saved == tmp_path / "outputs" / "b1.txt"

    def test_explicit_path_kept(self, tmp_path):
        service = create_file_service(tmp_path / "unused")
        target = tmp_path / "reports" / "suite.json"
        assert service.save_output("{}\n", target) == target
        assert target.read_text(encoding="utf-8") == "{}\n"

    def test_unsupported_suffix(self, tmp_path):
        with pytest.raises(ValidationError):
            create_file_service(tmp_path).save_output("x", "b1.png")

    def test_write_failure(self, tmp_path):
        target = tmp_path / "taken.txt"
        target.mkdir()
        with pytest.raises(FileOperationError):
            create_file_service(tmp_path).save_output("x", target)
