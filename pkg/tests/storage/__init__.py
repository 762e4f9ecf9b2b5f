"""Shared test helpers for storage backends."""

from typing import Any


def report_document(**extra: Any) -> dict[str, Any]:
    """Build a minimal verify-style report document."""
    document: dict[str, Any] = {
        "mesh": "builtin:square",
        "k": 2,
        "passed": True,
        "reports": [{"check": "psi", "status": "pass", "witness": None}],
    }
    document.update(extra)
    return document


def convergence_rows() -> list[dict[str, Any]]:
    return [
        {"level": 0, "h": 1.4142135623730951, "err_sigma_L2": 0.1, "err_u_L2": 0.01, "order_sigma": None, "order_u": None},
        {"level": 1, "h": 0.7071067811865476, "err_sigma_L2": 0.0125, "err_u_L2": 0.0025, "order_sigma": 3.0, "order_u": 2.0},
    ]
