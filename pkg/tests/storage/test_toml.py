"""Tests for the TOML storage backend."""

import tomllib
from pathlib import Path

import tomli_w

from macroelast.storage import TomlStorage
from macroelast.storage.toml import drop_none
from . import convergence_rows, report_document


class TestTomlStorage:
    def test_creates_new_file(self, tmp_path: Path) -> None:
        p = tmp_path / "out.toml"
        TomlStorage(p).store(report_document())
        data = tomllib.loads(p.read_text())
        assert data["k"] == 2
        assert data["reports"] == [{"check": "psi", "status": "pass"}]

    def test_preserves_unrelated_keys(self, tmp_path: Path) -> None:
        p = tmp_path / "out.toml"
        p.write_bytes(tomli_w.dumps({"notes": "keep", "k": 7}).encode())
        TomlStorage(p).store({"k": 3})
        data = tomllib.loads(p.read_text())
        assert data == {"notes": "keep", "k": 3}

    def test_rows_without_orders(self, tmp_path: Path) -> None:
        p = tmp_path / "out.toml"
        TomlStorage(p).store({"rows": convergence_rows()})
        rows = tomllib.loads(p.read_text())["rows"]
        assert "order_sigma" not in rows[0]
        assert rows[1]["order_sigma"] == 3.0


class TestDropNone:
    def test_nested(self) -> None:
        assert drop_none({"a": None, "b": {"c": None, "d": 1}, "e": [None, 2]}) == {"b": {"d": 1}, "e": [2]}


class TestTomlLoad:
    def test_load_nonexistent_file(self, tmp_path: Path) -> None:
        assert TomlStorage(tmp_path / "out.toml").load() == {}

    def test_load_empty_file(self, tmp_path: Path) -> None:
        p = tmp_path / "out.toml"
        p.write_text("")
        assert TomlStorage(p).load() == {}
