"""CSV storage backend – write the ``rows`` table of a document."""

from __future__ import annotations

import io
from pathlib import Path
from typing import Any

import pandas as pd

FLOAT_FORMAT = "%.15g"


def rows_to_csv(rows: list[dict[str, Any]]) -> str:
    """Comma separated table with a header row and 15 significant digits."""
    buffer = io.StringIO()
    pd.DataFrame(rows).to_csv(buffer, index=False, float_format=FLOAT_FORMAT)
    return buffer.getvalue()


class CsvStorage:
    """Write ``document["rows"]`` to a CSV file.

    Unlike the document backends the table is replaced on every store.
    """

    def __init__(self, path: Path) -> None:
        self.path = path

    def load(self) -> dict[str, Any]:
        if not self.path.exists() or not self.path.read_text().strip():
            return {}
        frame = pd.read_csv(self.path)
        return {"rows": frame.to_dict(orient="records")}

    def store(self, document: dict[str, Any]) -> None:
        rows = document.get("rows")
        if not rows:
            raise ValueError("CSV output needs a non-empty 'rows' table")
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(rows_to_csv(rows))
