"""Storage module – writes verification reports and result tables to outputs.

Each storage backend implements the ``store`` protocol: it receives a report
document (a JSON-compatible dict) and writes it to the target.

Document backends (JSON, YAML, TOML) perform *non-destructive* updates: keys
already present in the file that the new document does not mention are kept.
The CSV backend writes the ``rows`` table of the document.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Protocol

from macroelast.storage.csv import CsvStorage
from macroelast.storage.json import JsonStorage
from macroelast.storage.stdout import StdoutStorage
from macroelast.storage.toml import TomlStorage
from macroelast.storage.yaml import YamlStorage


class ReportStorage(Protocol):
    """Protocol that all storage backends must satisfy."""

    def load(self) -> dict[str, Any]: ...

    def store(self, document: dict[str, Any]) -> None: ...


# ---------------------------------------------------------------------------
# Factory
# ---------------------------------------------------------------------------

_FILE_EXTENSIONS: dict[str, type] = {
    ".csv": CsvStorage,
    ".json": JsonStorage,
    ".toml": TomlStorage,
    ".yaml": YamlStorage,
    ".yml": YamlStorage,
}

_BACKEND_TYPES: dict[str, type] = {
    "csv": CsvStorage,
    "json": JsonStorage,
    "toml": TomlStorage,
    "yaml": YamlStorage,
}


def get_storage(target: str, backend_type: str | None = None) -> ReportStorage:
    """Return the storage backend for the given name or file path.

    Pass ``"stdout"`` to print to standard output, or a file path whose
    extension determines the format (``*.csv``, ``*.json``, ``*.toml``,
    ``*.yaml`` / ``*.yml``). ``backend_type`` overrides the extension.
    """
    if target == "stdout":
        return StdoutStorage()

    path = Path(target)
    if backend_type:
        try:
            return _BACKEND_TYPES[backend_type](path)
        except KeyError:
            raise ValueError(f"Unknown backend type: {backend_type}") from None

    suffix = path.suffix.lower()
    if suffix in _FILE_EXTENSIONS:
        return _FILE_EXTENSIONS[suffix](path)

    raise ValueError(
        f"Cannot determine storage format for '{target}'. "
        f"Pass 'stdout' or a path ending in {', '.join(_FILE_EXTENSIONS)}."
    )


__all__ = [
    "CsvStorage",
    "JsonStorage",
    "ReportStorage",
    "StdoutStorage",
    "TomlStorage",
    "YamlStorage",
    "get_storage",
]
