"""YAML storage backend – write reports to a YAML file."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml


class YamlStorage:
    """Write report documents to a YAML file, keeping unrelated top-level keys."""

    def __init__(self, path: Path) -> None:
        self.path = path

    def load(self) -> dict[str, Any]:
        if not self.path.exists():
            return {}
        text = self.path.read_text().strip()
        if not text:
            return {}
        loaded = yaml.safe_load(text)
        return loaded if isinstance(loaded, dict) else {}

    def store(self, document: dict[str, Any]) -> None:
        existing = self.load()
        existing.update(document)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(yaml.safe_dump(existing, default_flow_style=False, allow_unicode=True, sort_keys=False))
