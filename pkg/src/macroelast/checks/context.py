"""Shared state and report construction for verification checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from macroelast.geometry import MacroTriangle
from macroelast.geometry.mesh import Mesh
from macroelast.schema import CheckName, CheckReport, CheckStatus


@dataclass
class CheckContext:
    mesh: Mesh
    mesh_name: str
    k: int
    rng: np.random.Generator
    trials: int = 20
    cache: dict[str, Any] = field(default_factory=dict)

    @cached_property
    def shapes(self) -> list[MacroTriangle]:
        """Distinct triangle shapes of the mesh, in first-seen order."""
        return list(dict.fromkeys(self.mesh.macro(t).shape_key() for t in range(len(self.mesh.triangles))))


def report(
    ctx: CheckContext,
    check: CheckName,
    failures: list[Any] | None = None,
    skipped: str | None = None,
    **extra: Any,
) -> CheckReport:
    """Build a report; any failure entry becomes the witness."""
    if skipped is not None:
        return CheckReport(
            check=check, mesh=ctx.mesh_name, k=ctx.k, status=CheckStatus.SKIPPED, details={"reason": skipped}
        )
    status = CheckStatus.FAIL if failures else CheckStatus.PASS
    return CheckReport(
        check=check,
        mesh=ctx.mesh_name,
        k=ctx.k,
        status=status,
        witness=failures or None,
        **extra,
    )
