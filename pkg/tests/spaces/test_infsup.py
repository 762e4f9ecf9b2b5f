"""Tests for the discrete inf-sup constant."""

from __future__ import annotations

import pytest

from macroelast.geometry.mesh import reference_mesh, unit_square
from macroelast.spaces.infsup import inf_sup_constant, inf_sup_estimate


class TestInfSup:
    @pytest.mark.parametrize("k", [1, 2])
    def test_positive(self, k: int) -> None:
        assert inf_sup_constant(reference_mesh(), k) > 0

    def test_stable_under_refinement(self) -> None:
        constants = inf_sup_estimate([unit_square(level) for level in range(3)], 2)
        assert min(constants) > 0
        assert max(constants) / min(constants) < 1.1
