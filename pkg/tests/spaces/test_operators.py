"""Tests for the exact operator matrices and global interpolation."""

from __future__ import annotations

import numpy as np
import pytest

from macroelast.geometry.mesh import reference_mesh, unit_square
from macroelast.spaces import Family, assemble_space
from macroelast.spaces.operators import (
    affine_coefficients,
    cartesian_scalar,
    interpolate_global,
    operator_matrix,
    random_cartesian,
    restrict,
)


class TestOperatorMatrix:
    def test_shapes(self) -> None:
        mesh = unit_square(0)
        u, sigma, v = (assemble_space(mesh, f, 2) for f in (Family.U, Family.SIGMA, Family.V))
        assert operator_matrix("J", u, sigma).shape == (36, 27)
        assert operator_matrix("div", sigma, v).shape == (12, 36)

    def test_div_after_j_vanishes(self) -> None:
        mesh = unit_square(0)
        u, sigma, v = (assemble_space(mesh, f, 2) for f in (Family.U, Family.SIGMA, Family.V))
        composed = operator_matrix("div", sigma, v).compose(operator_matrix("J", u, sigma))
        assert composed.shape == (12, 27)
        assert composed.is_zero()

    def test_to_numpy(self) -> None:
        mesh = reference_mesh()
        sigma, v = assemble_space(mesh, Family.SIGMA, 2), assemble_space(mesh, Family.V, 2)
        div = operator_matrix("div", sigma, v)
        dense = div.to_numpy()
        assert dense.shape == (6, 21)
        assert np.linalg.matrix_rank(dense) == div.rank() == 6

    def test_wrong_families(self) -> None:
        mesh = reference_mesh()
        u, v = assemble_space(mesh, Family.U, 2), assemble_space(mesh, Family.V, 2)
        with pytest.raises(ValueError, match="J maps U to Sigma"):
            operator_matrix("J", u, v)

    def test_unknown_operator(self) -> None:
        mesh = reference_mesh()
        u = assemble_space(mesh, Family.U, 2)
        with pytest.raises(ValueError, match="unknown operator"):
            operator_matrix("curl", u, u)  # type: ignore[arg-type]

    def test_apply_checks_length(self) -> None:
        mesh = reference_mesh()
        div = operator_matrix("div", assemble_space(mesh, Family.SIGMA, 1), assemble_space(mesh, Family.V, 1))
        with pytest.raises(ValueError, match="expects 15 coefficients"):
            div.apply([0, 1])


class TestInterpolation:
    def test_affine_modes_in_kernel_of_j(self) -> None:
        mesh = unit_square(0)
        u, sigma = assemble_space(mesh, Family.U, 2), assemble_space(mesh, Family.SIGMA, 2)
        j = operator_matrix("J", u, sigma)
        for coeffs in affine_coefficients(u):
            assert not any(j.apply(coeffs))

    def test_restrict_recovers_polynomial(self) -> None:
        mesh = unit_square(0)
        space = assemble_space(mesh, Family.U, 2)
        terms = {(3, 1): 1, (0, 2): -2, (0, 0): 5}
        coeffs = interpolate_global(space, lambda m: cartesian_scalar(m, terms))
        for t in range(len(mesh.triangles)):
            assert restrict(space, coeffs, t).equals(cartesian_scalar(mesh.macro(t), terms))

    def test_affine_modes_need_u(self) -> None:
        with pytest.raises(ValueError, match="affine modes"):
            affine_coefficients(assemble_space(reference_mesh(), Family.V, 1))

    def test_random_cartesian_keeps_top_degree(self) -> None:
        terms = random_cartesian(np.random.default_rng(0), 3)
        assert max(a + b for a, b in terms) == 3
