"""Tests for the storage factory function."""

from pathlib import Path

import pytest

from macroelast.storage import (
    CsvStorage,
    JsonStorage,
    StdoutStorage,
    TomlStorage,
    YamlStorage,
    get_storage,
)


class TestGetStorage:
    def test_stdout_backend(self) -> None:
        assert isinstance(get_storage("stdout"), StdoutStorage)

    @pytest.mark.parametrize(
        ("name", "backend"),
        [
            ("out.json", JsonStorage),
            ("out.toml", TomlStorage),
            ("out.yaml", YamlStorage),
            ("out.yml", YamlStorage),
            ("out.csv", CsvStorage),
            ("OUT.CSV", CsvStorage),
        ],
    )
    def test_by_extension(self, tmp_path: Path, name: str, backend: type) -> None:
        assert isinstance(get_storage(str(tmp_path / name)), backend)

    def test_unknown_extension_raises(self) -> None:
        with pytest.raises(ValueError, match="Cannot determine storage format"):
            get_storage("report.xyz")

    def test_explicit_backend_type(self, tmp_path: Path) -> None:
        assert isinstance(get_storage(str(tmp_path / "report.txt"), backend_type="json"), JsonStorage)
        assert isinstance(get_storage(str(tmp_path / "rates.txt"), backend_type="csv"), CsvStorage)

    def test_backend_type_overrides_extension(self, tmp_path: Path) -> None:
        assert isinstance(get_storage(str(tmp_path / "out.json"), backend_type="yaml"), YamlStorage)

    def test_unknown_backend_type_raises(self) -> None:
        with pytest.raises(ValueError, match="Unknown backend type"):
            get_storage("file.txt", backend_type="dotenv")
