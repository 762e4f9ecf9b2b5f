"""Tests for the discontinuous displacement element."""

from __future__ import annotations

import pytest

from macroelast.elements.displacement import DisplacementElement, dim_displacement, l2_project
from macroelast.fields import PiecewiseScalar, PiecewiseVector
from macroelast.poly import BaryPoly

from . import skewed_macro


class TestDisplacementElement:
    @pytest.mark.parametrize(("k", "expected"), [(1, 2), (2, 6), (3, 12)])
    def test_dimension(self, k: int, expected: int) -> None:
        assert dim_displacement(k) == expected
        assert DisplacementElement(skewed_macro(), k).dim == expected

    def test_projection_reproduces_polynomials(self) -> None:
        macro = skewed_macro()
        element = DisplacementElement(macro, 2)
        f = PiecewiseVector(
            PiecewiseScalar.polynomial(macro, BaryPoly.lam(0) * 3),
            PiecewiseScalar.polynomial(macro, BaryPoly.lam(2) - BaryPoly.lam(1)),
        )
        assert (element.combine(l2_project(f, macro, 2)) - f).is_zero()

    def test_projection_of_quadratic_is_orthogonal(self) -> None:
        macro = skewed_macro()
        element = DisplacementElement(macro, 2)
        q = PiecewiseScalar.polynomial(macro, BaryPoly.lam(0) * BaryPoly.lam(1))
        f = PiecewiseVector(q, PiecewiseScalar.zero(macro))
        residual = f - element.combine(l2_project(f, macro, 2))
        assert all(dof(residual) == 0 for dof in element.dofs)

    def test_rejects_k0(self) -> None:
        with pytest.raises(ValueError, match="k >= 1"):
            DisplacementElement(skewed_macro(), 0)
