"""Tests for the averaged quasi-interpolant."""

from __future__ import annotations

from fractions import Fraction

import pytest

from macroelast.elements.c1 import build_v
from macroelast.geometry.mesh import reference_mesh, unit_square
from macroelast.poly import monomials
from macroelast.spaces import Family, assemble_space
from macroelast.spaces.operators import cartesian_scalar, interpolate_global
from macroelast.spaces.quasi import lagrange_interpolant, point_value, principal_lattice, quasi_interpolate_h2


class TestLattice:
    def test_size(self) -> None:
        assert len(principal_lattice(3)) == len(monomials(3))

    def test_rejects_zero_degree(self) -> None:
        with pytest.raises(ValueError, match="positive"):
            principal_lattice(0)

    def test_lagrange_interpolant_of_polynomial(self) -> None:
        mesh = reference_mesh()
        v = cartesian_scalar(mesh.macro(0), {(2, 1): 3, (0, 1): -1})
        assert v.equals(lagrange_interpolant(v, 3))

    def test_point_value_reads_containing_piece(self) -> None:
        macro = reference_mesh().macro(0)
        v = build_v(macro, 1, 0)
        point = (Fraction(1, 2), Fraction(1, 2), Fraction(0))
        assert point_value(v, point) == v.pieces[2].evaluate(point)


class TestQuasiInterpolation:
    @pytest.mark.parametrize("k", [1, 2])
    def test_reproduces_polynomials(self, k: int) -> None:
        space = assemble_space(unit_square(1), Family.U, k)
        terms = {(k + 2, 0): 1, (1, 1): 2, (0, 0): -1}
        quasi = quasi_interpolate_h2(space, lambda m: cartesian_scalar(m, terms))
        nodal = interpolate_global(space, lambda m: cartesian_scalar(m, terms))
        assert quasi == nodal

    def test_needs_u_space(self) -> None:
        with pytest.raises(ValueError, match="U spaces"):
            quasi_interpolate_h2(assemble_space(reference_mesh(), Family.SIGMA, 2), lambda m: None)  # type: ignore[arg-type,return-value]
