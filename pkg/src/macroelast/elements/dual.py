"""Closed-form dual bases of ``U₃(T)`` and ``U₂(T)`` for the modified DoFs."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from macroelast.elements.c1 import C1DoFSet, build_u, build_w, c1_dofs
from macroelast.elements.dofs import dof_matrix
from macroelast.fields import PiecewiseScalar
from macroelast.geometry import MacroTriangle
from macroelast.poly import BaryPoly

LowOrderSpace = Literal["U2", "U3"]


@dataclass(frozen=True)
class DualBasisLowOrder:
    """``[φᵢ⁰; φ¹_{i,i+1}, φ¹_{i,i−1}; wᵢ]`` in the order of the modified DoFs."""

    space: LowOrderSpace
    functions: tuple[PiecewiseScalar, ...]
    dofs: C1DoFSet

    def pairing(self) -> list[list[Fraction]]:
        """``N_a(φ_b)``; the identity matrix for a dual basis."""
        return dof_matrix(self.dofs.functionals, self.functions)

    def is_dual(self) -> bool:
        n = len(self.functions)
        matrix = self.pairing()
        return len(matrix) == n and all(matrix[a][b] == int(a == b) for a in range(n) for b in range(n))

    def vertex_functions(self) -> list[PiecewiseScalar]:
        return list(self.functions[:3])

    def directional(self, i: int) -> tuple[PiecewiseScalar, PiecewiseScalar]:
        """``(φ¹_{i,i+1}, φ¹_{i,i−1})``."""
        return self.functions[3 + 2 * i], self.functions[4 + 2 * i]


def _lam(i: int) -> BaryPoly:
    return BaryPoly.lam(i % 3)


def _u3(macro: MacroTriangle) -> list[PiecewiseScalar]:
    w = [build_w(macro, i) for i in range(3)]
    directional: list[PiecewiseScalar] = []
    for i in range(3):
        ahead = PiecewiseScalar.polynomial(macro, _lam(i) ** 2 * _lam(i + 1)) - w[(i - 1) % 3] * (
            2 * macro.c(i, (i - 1) % 3)
        )
        behind = PiecewiseScalar.polynomial(macro, _lam(i) ** 2 * _lam(i - 1)) - w[(i + 1) % 3] * (
            2 * macro.c(i, (i + 1) % 3)
        )
        directional += [ahead, behind]
    vertex = [
        PiecewiseScalar.polynomial(macro, _lam(i) ** 3) + directional[2 * i] * 3 + directional[2 * i + 1] * 3
        for i in range(3)
    ]
    return vertex + directional + w


def _u2(macro: MacroTriangle) -> list[PiecewiseScalar]:
    u = [build_u(macro, i) for i in range(3)]
    directional: list[PiecewiseScalar] = []
    for i in range(3):
        ahead = (PiecewiseScalar.polynomial(macro, _lam(i) * _lam(i + 1)) + u[(i - 1) % 3]) / 2
        behind = (PiecewiseScalar.polynomial(macro, _lam(i) * _lam(i - 1)) - u[(i + 1) % 3]) / 2
        directional += [ahead, behind]
    vertex = [
        PiecewiseScalar.polynomial(macro, _lam(i) ** 2) + directional[2 * i] * 2 + directional[2 * i + 1] * 2
        for i in range(3)
    ]
    return vertex + directional


def dual_basis_low_order(macro: MacroTriangle, space: LowOrderSpace) -> DualBasisLowOrder:
    """Explicit dual basis of ``U₂(T)`` or ``U₃(T)`` against the modified DoFs."""
    if space == "U3":
        return DualBasisLowOrder(space, tuple(_u3(macro)), c1_dofs(macro, 1, "modified"))
    if space == "U2":
        return DualBasisLowOrder(space, tuple(_u2(macro)), c1_dofs(macro, 0, "modified"))
    raise ValueError(f"unknown low-order space '{space}' (expected U2 or U3)")


def gradient_duals(macro: MacroTriangle, dual: DualBasisLowOrder) -> list[tuple[PiecewiseScalar, PiecewiseScalar]]:
    """Duals of the Cartesian gradient DoFs at each vertex.

    With ``Mᵢ = (t_{i,i−1}  t_{i,i+1})`` they are
    ``(ψ_{i,x}, ψ_{i,y}) = (φ¹_{i,i−1}, φ¹_{i,i+1}) Mᵢᵀ``.
    """
    out = []
    for i in range(3):
        ahead, behind = dual.directional(i)
        t_behind, t_ahead = macro.t(i, (i - 1) % 3), macro.t(i, (i + 1) % 3)
        out.append(
            (
                behind * t_behind.x + ahead * t_ahead.x,
                behind * t_behind.y + ahead * t_ahead.y,
            )
        )
    return out
