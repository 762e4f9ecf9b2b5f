"""Tests for global conformity, exactness and the commuting diagram."""

from __future__ import annotations

import numpy as np
import pytest

from macroelast.geometry.mesh import reference_mesh, unit_square
from macroelast.spaces import Family, assemble_space
from macroelast.spaces.checks import (
    ExactnessPreconditionError,
    global_c1_check,
    global_normal_trace_check,
    verify_commuting,
    verify_exactness,
)

from . import annulus


class TestConformity:
    @pytest.mark.parametrize("k", [0, 1, 2])
    def test_u_is_c1(self, k: int) -> None:
        verdict = global_c1_check(assemble_space(unit_square(1), Family.U, k))
        assert verdict.passed
        assert verdict.edges_checked == 8

    @pytest.mark.parametrize("k", [1, 2])
    def test_sigma_normal_trace(self, k: int) -> None:
        assert global_normal_trace_check(assemble_space(unit_square(1), Family.SIGMA, k)).passed

    def test_flipped_vertex_dof_breaks_c1(self) -> None:
        space = assemble_space(unit_square(0), Family.U, 2).flipped(0, 0)
        verdict = global_c1_check(space)
        assert not verdict.passed
        assert verdict.offending[0][1] == 0

    def test_flipped_edge_dof_breaks_normal_trace(self) -> None:
        # local DoF 7 of triangle 0 is the normal moment on the shared diagonal
        space = assemble_space(unit_square(0), Family.SIGMA, 2).flipped(0, 7)
        assert not global_normal_trace_check(space).passed

    def test_wrong_family(self) -> None:
        with pytest.raises(ValueError, match="U spaces"):
            global_c1_check(assemble_space(reference_mesh(), Family.V, 1))


class TestExactness:
    @pytest.mark.parametrize(
        ("mesh", "k"),
        [(reference_mesh(), 2), (reference_mesh(), 3), (unit_square(0), 2), (unit_square(1), 2)],
    )
    def test_exact(self, mesh, k: int) -> None:
        report = verify_exactness(mesh, k)
        assert report.passed, report.failures
        assert report.ranks["J"] == report.dims["U"] - 3
        assert report.ranks["div"] == report.dims["V"]

    def test_square_ranks(self) -> None:
        report = verify_exactness(unit_square(0), 2)
        assert report.dims == {"U": 27, "Sigma": 36, "V": 12}
        assert report.ranks == {"J": 24, "div": 12}

    def test_annulus_refused(self) -> None:
        with pytest.raises(ExactnessPreconditionError, match="simply connected"):
            verify_exactness(annulus(), 2)

    def test_low_degree_refused(self) -> None:
        with pytest.raises(ValueError, match="k >= 2"):
            verify_exactness(reference_mesh(), 1)


class TestCommuting:
    def test_square(self) -> None:
        report = verify_commuting(unit_square(0), 2, np.random.default_rng(3), trials=2)
        assert report.passed, report.mismatches

    def test_reference_cubic(self) -> None:
        assert verify_commuting(reference_mesh(), 3, np.random.default_rng(0), trials=1).passed

    def test_negative_degree(self) -> None:
        with pytest.raises(ValueError, match="non-negative"):
            verify_commuting(reference_mesh(), 2, np.random.default_rng(0), degree=-1)
