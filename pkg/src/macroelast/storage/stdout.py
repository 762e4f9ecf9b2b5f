"""Stdout storage backend – print reports to standard output."""

from __future__ import annotations

import json
from typing import Any

from macroelast.storage.csv import rows_to_csv


class StdoutStorage:
    """Print a document to standard output.

    Documents carrying a ``rows`` table are printed as CSV, everything else
    as indented JSON.
    """

    def load(self) -> dict[str, Any]:
        """No existing document to load from stdout."""
        return {}

    def store(self, document: dict[str, Any]) -> None:
        if document.get("rows"):
            print(rows_to_csv(document["rows"]), end="")
        else:
            print(json.dumps(document, indent=2, default=str))
