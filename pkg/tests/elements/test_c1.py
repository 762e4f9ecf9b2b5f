"""Tests for the C¹ potential element."""

from __future__ import annotations

from fractions import Fraction

import pytest

from macroelast.elements.c1 import (
    C1Element,
    build_v,
    build_v_edge,
    build_u,
    build_w,
    c1_dofs,
    dim_c1,
    edge_pair_potential,
    edge_enrichment_dependency,
    hierarchical_u3_basis,
    interpolate_c1_local,
    replacement_identity_holds,
    same_span,
    shape_basis_U,
    verify_unisolvence_c1,
)
from macroelast.elements.stress import build_psi
from macroelast.fields import PiecewiseScalar, airy, is_c1
from macroelast.geometry import EX, EY
from macroelast.poly import BaryPoly, EdgePoly

from . import (
    CUBIC_BUBBLE,
    EDGE_BUBBLE,
    macros,
    normal_trace,
    random_macros,
    reference_macro,
    skewed_macro,
    weighted_sum,
)


class TestDimensions:
    @pytest.mark.parametrize(("k", "expected"), [(0, 9), (1, 12), (2, 18), (3, 24), (4, 31)])
    def test_dimension(self, k: int, expected: int) -> None:
        element = C1Element(reference_macro(), k)
        assert dim_c1(k) == expected
        assert element.dim == expected
        assert len(element.dofs) == expected

    def test_negative_degree(self) -> None:
        with pytest.raises(ValueError, match="nonnegative"):
            dim_c1(-1)

    def test_shape_basis_blocks(self) -> None:
        basis = shape_basis_U(reference_macro(), 2)
        assert len(basis.block("U0_v")) == 3
        assert len(basis.block("U1_v")) == 6
        assert len(basis.block("U0_e")) == 3
        assert len(basis.block("U1_e")) == 6
        assert basis.block("U0_T") == []


class TestPotentials:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_airy_image_is_enrichment(self, k: int) -> None:
        for macro in macros():
            for i in range(3):
                assert airy(build_v(macro, k, i)).equals(build_psi(macro, k, i))

    @pytest.mark.parametrize("k", [0, 1, 2, 3])
    def test_shape_functions_are_c1(self, k: int) -> None:
        element = C1Element(skewed_macro(), k)
        assert all(is_c1(v) for v in element.basis)

    def test_edge_potential_vertex_data_vanishes(self) -> None:
        v = build_v_edge(skewed_macro(), 2, 0, 1)
        for corner in range(3):
            assert v.value_at(corner) == 0
            assert v.derivative(EX).value_at(corner) == 0
            assert v.derivative(EY).value_at(corner) == 0

    def test_edge_potential_side(self) -> None:
        with pytest.raises(ValueError, match="side"):
            build_v_edge(reference_macro(), 2, 0, 2)  # type: ignore[arg-type]

    def test_potentials_need_k1(self) -> None:
        with pytest.raises(ValueError, match="k >= 1"):
            build_v(reference_macro(), 0, 0)

    def test_edge_dependency_is_cubic_bubble(self) -> None:
        macro = skewed_macro()
        bubble = BaryPoly.lam(0) * BaryPoly.lam(1) * BaryPoly.lam(2) * (2 * macro.airy_constant)
        for difference in edge_enrichment_dependency(macro):
            assert difference.equals(bubble)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_replacement_identity(self, k: int) -> None:
        for i in range(3):
            assert replacement_identity_holds(skewed_macro(), k, i)

    def test_hierarchical_u3_spans_element(self) -> None:
        macro = skewed_macro()
        element = C1Element(macro, 1)
        assert same_span(hierarchical_u3_basis(macro), list(element.basis), 3)


class TestDoFs:
    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    def test_unisolvent(self, k: int) -> None:
        for macro in random_macros():
            report = verify_unisolvence_c1(macro, k)
            assert report.determinant != 0
            assert report.invertible

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_block_lower_triangular(self, k: int) -> None:
        report = verify_unisolvence_c1(skewed_macro(), k)
        assert report.offending_block is None
        assert report.blocks
        diagonal = [v for v in report.blocks.values() if v in ("invertible", "singular")]
        assert diagonal and all(v == "invertible" for v in diagonal)

    @pytest.mark.parametrize("k", [0, 1])
    def test_modified_variant_unisolvent(self, k: int) -> None:
        assert verify_unisolvence_c1(skewed_macro(), k, variant="modified").invertible

    def test_modified_variant_limited_to_low_order(self) -> None:
        with pytest.raises(ValueError, match="k = 0 and k = 1"):
            c1_dofs(reference_macro(), 2, "modified")

    def test_unknown_variant(self) -> None:
        with pytest.raises(ValueError, match="unknown DoF variant"):
            c1_dofs(reference_macro(), 2, "other")  # type: ignore[arg-type]

    def test_normal_moments_flip_with_orientation(self) -> None:
        dofs = c1_dofs(reference_macro(), 2)
        normal = [d for d in dofs.functionals if d.group == "D1_e"]
        assert all(d.odd for d in normal)
        assert [d.slot for d in normal if d.index == 0] == [1, 2]

    def test_interpolation_reproduces_polynomials(self) -> None:
        macro = skewed_macro()
        element = C1Element(macro, 2)
        v = PiecewiseScalar.polynomial(macro, BaryPoly.lam(0) ** 2 * BaryPoly.lam(1) ** 2)
        assert element.combine(interpolate_c1_local(v, macro, 2)).equals(v)


class TestLowOrderPotentials:
    def test_w_normal_derivatives_are_dual(self) -> None:
        for macro in random_macros():
            for i in range(3):
                w = build_w(macro, i)
                for j in range(3):
                    trace = normal_trace(w, j)
                    assert trace == EDGE_BUBBLE * int(i == j)
                    assert trace.integral_factor() == Fraction(int(i == j), 6)

    def test_w_vertex_data_vanishes(self) -> None:
        macro = skewed_macro()
        for i in range(3):
            w = build_w(macro, i)
            assert is_c1(w)
            for corner in range(3):
                assert w.value_at(corner) == 0
                assert w.derivative(EX).value_at(corner) == 0
                assert w.derivative(EY).value_at(corner) == 0

    def test_weighted_w_sum_is_cubic_bubble(self) -> None:
        for macro in random_macros():
            weights = [macro.c(i, i) for i in range(3)]
            assert weighted_sum([build_w(macro, i) for i in range(3)], weights).equals(CUBIC_BUBBLE)

    def test_weighted_edge_pair_sum(self) -> None:
        for macro in random_macros():
            weights = [macro.c(i, i) for i in range(3)]
            total = weighted_sum([edge_pair_potential(macro, i) for i in range(3)], weights)
            assert total.equals(CUBIC_BUBBLE * Fraction(3, 2))

    def test_edge_pair_potential_leaks_onto_other_edges(self) -> None:
        macro = skewed_macro()
        assert not normal_trace(edge_pair_potential(macro, 0), 1).is_zero()

    def test_u_normal_derivatives_are_linear(self) -> None:
        for macro in random_macros():
            for i in range(3):
                u = build_u(macro, i)
                assert is_c1(u)
                for j in range(3):
                    form = normal_trace(u, j).homogenize(2)
                    assert form.coefficient((1, 1)) == form.coefficient((2, 0)) + form.coefficient((0, 2))


class TestEdgePotentialTraces:
    @pytest.mark.parametrize("k", [2, 3])
    def test_forward_potential(self, k: int) -> None:
        for macro in random_macros():
            v = build_v_edge(macro, k, 0, 1)
            scale = -2 * macro.airy_constant * macro.c(1, 1)
            assert normal_trace(v, 1) == EdgePoly.monomial((k, 1), scale)
            assert normal_trace(v, 0).is_zero()
            assert normal_trace(v, 2).is_zero()

    @pytest.mark.parametrize("k", [2, 3])
    def test_backward_potential(self, k: int) -> None:
        for macro in random_macros():
            v = build_v_edge(macro, k, 0, -1)
            scale = 2 * macro.airy_constant * macro.c(2, 2)
            assert normal_trace(v, 2) == EdgePoly.monomial((k, 1), scale)
            assert normal_trace(v, 0).is_zero()
            assert normal_trace(v, 1).is_zero()

    def test_lowest_order_potential_leaks_onto_opposite_edge(self) -> None:
        macro = skewed_macro()
        v = build_v_edge(macro, 1, 0, 1)
        assert normal_trace(v, 0) == EDGE_BUBBLE * (-macro.airy_constant * macro.c(0, 0))
