"""Tests for the mixed elasticity solver."""

from __future__ import annotations

from macroelast.schema import MaterialLaw

MATERIAL = MaterialLaw(lame_lambda=1.0, mu=1.0)
NEARLY_INCOMPRESSIBLE = MaterialLaw(lame_lambda=1e4, mu=1.0)
INCOMPRESSIBLE_LIMIT = MaterialLaw(lame_lambda=1e6, mu=1.0)
