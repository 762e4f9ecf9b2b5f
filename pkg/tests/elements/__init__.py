"""Tests for the local elements."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from macroelast.fields import PiecewiseScalar
from macroelast.geometry import REFERENCE_TRIANGLE, MacroTriangle, Triangle, random_rational_triangle, refine_barycentric
from macroelast.poly import BaryPoly, EdgePoly

RANDOM_SEEDS = range(10)
EDGE_BUBBLE = EdgePoly.monomial((1, 1))
CUBIC_BUBBLE = BaryPoly.lam(0) * BaryPoly.lam(1) * BaryPoly.lam(2)


def reference_macro() -> MacroTriangle:
    return refine_barycentric(REFERENCE_TRIANGLE)


def skewed_macro() -> MacroTriangle:
    """A generic triangle with no symmetry and a vertex away from the origin."""
    return refine_barycentric(Triangle.of((1, 0), (4, 1), (0, 3)))


def macros() -> list[MacroTriangle]:
    return [reference_macro(), skewed_macro()]


def random_macros() -> list[MacroTriangle]:
    """The reference split plus splits of ten seeded rational triangles."""
    trials = [refine_barycentric(random_rational_triangle(np.random.default_rng(seed))) for seed in RANDOM_SEEDS]
    return [reference_macro(), *trials]


def normal_trace(v: PiecewiseScalar, j: int) -> EdgePoly:
    """``∂_n v`` on the boundary edge ``e_j``, read from the piece that contains it."""
    return v.derivative(v.macro.normal(j)).pieces[j].restrict_edge(j)


def weighted_sum(fields: list[PiecewiseScalar], weights: list[Fraction]) -> PiecewiseScalar:
    total = PiecewiseScalar.zero(fields[0].macro)
    for field, weight in zip(fields, weights):
        total = total + field * weight
    return total
