"""Quasi-interpolation into ``U_{k+2,h}`` by averaged vertex gradients.

Vertex gradients are taken from the elementwise Lagrange interpolant of
degree ``k+2`` on the principal lattice and averaged over the triangles
sharing the vertex.  Every other DoF is applied to the function itself;
odd edge DoFs are averaged over both sides with their orientation signs.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from fractions import Fraction
from functools import lru_cache

from macroelast.elements.dofs import Entity
from macroelast.fields import PiecewiseScalar
from macroelast.geometry import EX, EY, MacroTriangle
from macroelast.linalg import Matrix, inverse, matvec
from macroelast.poly import BaryPoly, monomials
from macroelast.spaces import Family, GlobalSpace

logger = logging.getLogger(__name__)

Barycentric = tuple[Fraction, Fraction, Fraction]


def principal_lattice(degree: int) -> tuple[Barycentric, ...]:
    """Barycentric points ``α/degree`` for ``|α| = degree``."""
    if degree < 1:
        raise ValueError(f"lattice degree must be positive, got {degree}")
    return tuple(tuple(Fraction(a, degree) for a in alpha) for alpha in monomials(degree))  # type: ignore[misc]


@lru_cache(maxsize=None)
def _lattice_inverse(degree: int) -> Matrix:
    # barycentric Vandermonde; the same for every triangle
    basis = [BaryPoly.monomial(alpha) for alpha in monomials(degree)]
    return inverse([[p.evaluate(point) for p in basis] for point in principal_lattice(degree)])


def point_value(v: PiecewiseScalar, point: Barycentric) -> Fraction:
    """Value at a barycentric point, read from the subtriangle containing it."""
    piece = min(range(3), key=lambda j: point[j])
    return v.pieces[piece].evaluate(point)


def lagrange_interpolant(v: PiecewiseScalar, degree: int) -> BaryPoly:
    """Polynomial of *degree* matching *v* on the principal lattice."""
    values = [point_value(v, point) for point in principal_lattice(degree)]
    coeffs = matvec(_lattice_inverse(degree), values)
    return BaryPoly(degree, dict(zip(monomials(degree), coeffs)))


def quasi_interpolate_h2(space: GlobalSpace, local_field: Callable[[MacroTriangle], PiecewiseScalar]) -> list[Fraction]:
    """Coefficients in ``U_{k+2,h}`` of the averaged interpolant of a continuous field."""
    if space.family is not Family.U:
        raise ValueError(f"quasi-interpolation targets U spaces, got {space.name}")
    degree = space.k + 2
    sums = [Fraction(0)] * space.dim
    counts = [0] * space.dim
    for t in range(len(space.mesh.triangles)):
        macro = space.macro(t)
        v = local_field(macro)
        p = lagrange_interpolant(v, degree)
        grads = macro.grad_lambda
        gradients = [
            tuple(p.derivative(direction, grads).evaluate(tuple(int(j == i) for j in range(3))) for direction in (EX, EY))
            for i in range(3)
        ]
        for dof, local in zip(space.element(t).dofs, space.local_to_global(t)):
            if dof.entity is Entity.VERTEX and dof.slot > 0:
                value = gradients[dof.index][dof.slot - 1]
            else:
                value = local.sign * dof(v)
            sums[local.global_index] += value
            counts[local.global_index] += 1
    logger.debug("quasi-interpolated into %s", space.name)
    return [s / c for s, c in zip(sums, counts)]


__all__ = ["lagrange_interpolant", "point_value", "principal_lattice", "quasi_interpolate_h2"]
