"""TOML storage backend – write reports to a TOML file."""

from __future__ import annotations

import tomllib
from pathlib import Path
from typing import Any

import tomli_w


def drop_none(value: Any) -> Any:
    """TOML has no null: remove ``None`` entries from nested tables and arrays."""
    if isinstance(value, dict):
        return {k: drop_none(v) for k, v in value.items() if v is not None}
    if isinstance(value, list | tuple):
        return [drop_none(v) for v in value if v is not None]
    return value


class TomlStorage:
    """Write report documents to a TOML file.

    The update is non-destructive: unrelated top-level keys already present
    in the file are preserved.
    """

    def __init__(self, path: Path) -> None:
        self.path = path

    def load(self) -> dict[str, Any]:
        if not self.path.exists():
            return {}
        text = self.path.read_text().strip()
        if not text:
            return {}
        return tomllib.loads(text)

    def store(self, document: dict[str, Any]) -> None:
        existing = self.load()
        existing.update(drop_none(document))
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_bytes(tomli_w.dumps(existing).encode())
