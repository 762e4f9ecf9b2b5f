"""Displacement element module – discontinuous vector ``ℙ_{k−1}(T;ℝ²)`` with moment DoFs.

The DoFs are the moments ``∫_T f·(λ^β e_c) dx / |T|``, so interpolation is
the elementwise L² projection ``Q_{k−1}`` and the element's nodal basis is
the L²-dual of the monomials.
"""

from __future__ import annotations

from fractions import Fraction

from macroelast.elements.base import LocalElement
from macroelast.elements.dofs import DEFAULT_ORIENTATION, DoFFunctional, ElementOrientation, Entity
from macroelast.fields import PiecewiseScalar, PiecewiseVector
from macroelast.geometry import MacroTriangle
from macroelast.poly import BaryPoly, dim_polynomials, monomials


def dim_displacement(k: int) -> int:
    """``dim ℙ_{k−1}(T;ℝ²) = k(k+1)``."""
    return 2 * dim_polynomials(k - 1)


def _moment(position: int, beta: tuple[int, int, int], comp: int) -> DoFFunctional:
    weight = BaryPoly.monomial(beta)
    return DoFFunctional(
        "moment",
        Entity.CELL,
        0,
        2 * position + comp,
        "moment",
        evaluate=lambda f: f.components[comp].integral_factor(weight),
    )


class DisplacementElement(LocalElement):
    """``V_{k−1}(T)`` paired with the stress element of degree k."""

    family = "V"

    def __init__(self, macro: MacroTriangle, k: int, orientation: ElementOrientation = DEFAULT_ORIENTATION) -> None:
        if k < 1:
            raise ValueError(f"the displacement element needs k >= 1, got {k}")
        super().__init__(macro, k, orientation)

    def _build_basis(self) -> list[tuple[str, PiecewiseVector]]:
        zero = PiecewiseScalar.zero(self.macro)
        out = []
        for alpha in monomials(self.k - 1):
            p = PiecewiseScalar.polynomial(self.macro, BaryPoly.monomial(alpha))
            out.append(("moment", PiecewiseVector(p, zero)))
            out.append(("moment", PiecewiseVector(zero, p)))
        return out

    def _build_dofs(self) -> list[DoFFunctional]:
        return [_moment(position, beta, comp) for position, beta in enumerate(monomials(self.k - 1)) for comp in (0, 1)]

    def zero(self) -> PiecewiseVector:
        z = PiecewiseScalar.zero(self.macro)
        return PiecewiseVector(z, z)


def l2_project(f: PiecewiseVector, macro: MacroTriangle, k: int) -> list[Fraction]:
    """Monomial coefficients of ``Q_{k−1} f`` on one element."""
    return DisplacementElement(macro, k).interpolate(f)
