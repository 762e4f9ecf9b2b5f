"""Quadrature module – collapsed Gauss–Jacobi rules on triangles, Gauss–Legendre on edges.

Weights of a :class:`MacroRule` are relative to the macro triangle area, so
``∫_T f dx ≈ |T| Σ_q w_q f(x_q)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil

import numpy as np
from scipy.special import roots_jacobi, roots_legendre


class InsufficientQuadratureError(ValueError):
    """Raised when a rule is not exact for the polynomial degree an integral needs."""


def required_degree(k: int) -> int:
    """Quadrature degree used by the solver for stress degree *k*."""
    return 2 * (k + 3)


def check_degree(degree: int, k: int) -> None:
    needed = required_degree(k)
    if degree < needed:
        raise InsufficientQuadratureError(
            f"quadrature degree {degree} is below {needed} needed for k={k}"
        )


@dataclass(frozen=True, eq=False)
class TriangleRule:
    """Points in the reference triangle ``(0,0), (1,0), (0,1)``; weights sum to 1/2."""

    degree: int
    points: np.ndarray
    weights: np.ndarray


@lru_cache(maxsize=None)
def triangle_rule(degree: int) -> TriangleRule:
    """Collapsed (Duffy) product rule exact for polynomials of total *degree*."""
    if degree < 0:
        raise ValueError(f"quadrature degree must be non-negative, got {degree}")
    n = max(1, ceil((degree + 2) / 2))
    tl, wl = roots_legendre(n)
    tj, wj = roots_jacobi(n, 1, 0)
    x = (tj + 1) / 2
    s = (tl + 1) / 2
    points = np.column_stack(
        [np.repeat(x, n), np.outer(1 - x, s).ravel()]
    )
    weights = np.outer(wj, wl).ravel() / 8
    return TriangleRule(degree, points, weights)


@dataclass(frozen=True, eq=False)
class EdgeRule:
    """Points as edge coordinates ``(μ₀, μ₁)``; weights sum to 1."""

    degree: int
    points: np.ndarray
    weights: np.ndarray


@lru_cache(maxsize=None)
def edge_rule(degree: int) -> EdgeRule:
    n = max(1, ceil((degree + 1) / 2))
    t, w = roots_legendre(n)
    s = (t + 1) / 2
    return EdgeRule(degree, np.column_stack([1 - s, s]), w / 2)


@dataclass(frozen=True, eq=False)
class MacroRule:
    """Per-piece rule on the barycentric split, in macro barycentric coordinates.

    ``pieces[j]`` are the rows of ``barycentric`` and ``weights`` belonging to
    subtriangle ``T_j``.
    """

    degree: int
    barycentric: np.ndarray
    weights: np.ndarray
    pieces: tuple[slice, slice, slice]

    def physical(self, vertices: np.ndarray) -> np.ndarray:
        """Cartesian points for a triangle with float *vertices* (shape ``(3, 2)``)."""
        return self.barycentric @ vertices


@lru_cache(maxsize=None)
def macro_rule(degree: int) -> MacroRule:
    """Rule exact for piecewise polynomials of *degree* on the barycentric split."""
    base = triangle_rule(degree)
    mu = np.column_stack([1 - base.points.sum(axis=1), base.points])
    centre = np.full(3, 1 / 3)
    blocks, slices = [], []
    for j in range(3):
        corners = np.stack([np.eye(3)[(j + 1) % 3], np.eye(3)[(j + 2) % 3], centre])
        blocks.append(mu @ corners)
        start = j * len(mu)
        slices.append(slice(start, start + len(mu)))
    # each piece carries a third of the area; the reference triangle has area 1/2
    weights = np.tile(base.weights * 2 / 3, 3)
    return MacroRule(degree, np.vstack(blocks), weights, tuple(slices))  # type: ignore[arg-type]


__all__ = [
    "EdgeRule",
    "InsufficientQuadratureError",
    "MacroRule",
    "TriangleRule",
    "check_degree",
    "edge_rule",
    "macro_rule",
    "required_degree",
    "triangle_rule",
]
