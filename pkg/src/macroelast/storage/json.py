"""JSON storage backend – write reports to a JSON file."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any


class JsonStorage:
    """Write report documents to a JSON file.

    The update is non-destructive: unrelated top-level keys already present
    in the file are preserved.
    """

    def __init__(self, path: Path) -> None:
        self.path = path

    def load(self) -> dict[str, Any]:
        """Return the existing JSON object, or an empty dict."""
        if not self.path.exists():
            return {}
        text = self.path.read_text().strip()
        if not text:
            return {}
        data = json.loads(text)
        return data if isinstance(data, dict) else {}

    def store(self, document: dict[str, Any]) -> None:
        existing = self.load()
        existing.update(document)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(json.dumps(existing, indent=2, default=str) + "\n")
