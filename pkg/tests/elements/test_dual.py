"""Tests for the closed-form low-order dual bases."""

from __future__ import annotations

import pytest

from macroelast.elements.dual import dual_basis_low_order, gradient_duals
from macroelast.fields import is_c1
from macroelast.geometry import EX, EY

from . import random_macros, skewed_macro


class TestDualBasis:
    @pytest.mark.parametrize("space", ["U2", "U3"])
    def test_is_dual(self, space: str) -> None:
        for macro in random_macros():
            assert dual_basis_low_order(macro, space).is_dual()

    @pytest.mark.parametrize(("space", "size"), [("U2", 9), ("U3", 12)])
    def test_size(self, space: str, size: int) -> None:
        dual = dual_basis_low_order(skewed_macro(), space)
        assert len(dual.functions) == size
        assert len(dual.pairing()) == size

    @pytest.mark.parametrize("space", ["U2", "U3"])
    def test_functions_are_c1(self, space: str) -> None:
        assert all(is_c1(v) for v in dual_basis_low_order(skewed_macro(), space).functions)

    @pytest.mark.parametrize("space", ["U2", "U3"])
    def test_vertex_functions_sum_to_one(self, space: str) -> None:
        first, second, third = dual_basis_low_order(skewed_macro(), space).vertex_functions()
        assert (first + second + third).equals(1)

    def test_unknown_space(self) -> None:
        with pytest.raises(ValueError, match="unknown low-order space"):
            dual_basis_low_order(skewed_macro(), "U4")  # type: ignore[arg-type]


class TestGradientDuals:
    @pytest.mark.parametrize("space", ["U2", "U3"])
    def test_cartesian_derivatives(self, space: str) -> None:
        macro = skewed_macro()
        duals = gradient_duals(macro, dual_basis_low_order(macro, space))
        for i, (along_x, along_y) in enumerate(duals):
            for j in range(3):
                assert along_x.value_at(j) == 0
                assert along_x.derivative(EX).value_at(j) == int(i == j)
                assert along_x.derivative(EY).value_at(j) == 0
                assert along_y.derivative(EX).value_at(j) == 0
                assert along_y.derivative(EY).value_at(j) == int(i == j)
