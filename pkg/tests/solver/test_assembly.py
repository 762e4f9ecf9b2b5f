"""Tests for Gram matrices, loads and boundary data."""

from __future__ import annotations

import numpy as np

from macroelast.geometry.mesh import reference_mesh, unit_square
from macroelast.solver.assembly import (
    boundary_dofs,
    compliance_matrix,
    displacement_mass,
    load_moments,
    rigid_motion_constraints,
    stress_mass,
)
from macroelast.solver.quadrature import macro_rule, required_degree
from macroelast.spaces import Family, assemble_space

from . import MATERIAL, NEARLY_INCOMPRESSIBLE


class TestGramMatrices:
    def test_compliance_is_symmetric_positive_definite(self) -> None:
        space = assemble_space(unit_square(0), Family.SIGMA, 2)
        a = compliance_matrix(space, MATERIAL, macro_rule(required_degree(2)))
        np.testing.assert_allclose(a, a.T, atol=1e-12)
        assert np.linalg.eigvalsh(a).min() > 0

    def test_compliance_of_pure_shear_material(self) -> None:
        space = assemble_space(reference_mesh(), Family.SIGMA, 1)
        rule = macro_rule(required_degree(1))
        no_lambda = compliance_matrix(space, MATERIAL.model_copy(update={"lame_lambda": 0.0}), rule)
        np.testing.assert_allclose(no_lambda, stress_mass(space, rule) / 2, atol=1e-12)

    def test_compliance_stays_bounded_when_nearly_incompressible(self) -> None:
        space = assemble_space(reference_mesh(), Family.SIGMA, 1)
        rule = macro_rule(required_degree(1))
        a = compliance_matrix(space, NEARLY_INCOMPRESSIBLE, rule)
        assert np.abs(a).max() <= np.abs(stress_mass(space, rule)).max()

    def test_displacement_mass_of_constants(self) -> None:
        mesh = unit_square(0)
        space = assemble_space(mesh, Family.V, 1)
        m = displacement_mass(space, macro_rule(required_degree(1)))
        np.testing.assert_allclose(m, np.eye(4) * 0.5, atol=1e-12)


class TestLoads:
    def test_constant_load_moments(self) -> None:
        space = assemble_space(unit_square(0), Family.V, 1)
        moments = load_moments(space, lambda x, y: (np.full_like(x, 2.0), np.zeros_like(x)), macro_rule(8))
        np.testing.assert_allclose(moments, [2.0, 0.0, 2.0, 0.0], atol=1e-12)

    def test_rigid_motion_constraints_shape(self) -> None:
        space = assemble_space(unit_square(0), Family.V, 2)
        c = rigid_motion_constraints(space, macro_rule(required_degree(2)))
        assert c.shape == (3, 12)
        assert np.linalg.matrix_rank(c) == 3

    def test_boundary_dofs(self) -> None:
        space = assemble_space(unit_square(0), Family.SIGMA, 2)
        fixed = boundary_dofs(space)
        assert len(fixed) == 4 * 6
        assert space.mesh.edge_index[(0, 2)] * 6 not in fixed
