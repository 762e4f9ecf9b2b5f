"""Tests for the verification checks."""

from __future__ import annotations

import numpy as np

from macroelast.checks import CheckContext
from macroelast.geometry.mesh import Mesh, builtin_mesh


def context(mesh: Mesh | str = "square", k: int = 2, trials: int = 2) -> CheckContext:
    if isinstance(mesh, str):
        return CheckContext(builtin_mesh(mesh), f"builtin:{mesh}", k, np.random.default_rng(0), trials)
    return CheckContext(mesh, "custom", k, np.random.default_rng(0), trials)
