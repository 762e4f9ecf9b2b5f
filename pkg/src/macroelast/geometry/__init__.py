"""Geometry module – exact points, triangles and their barycentric refinement.

All coordinates are :class:`fractions.Fraction`.  Unit normals are never
formed: edge frames store the edge vector and its outward rotation, both
rational, together with the exact squared length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Literal

import numpy as np

Vertex = int | Literal["c"]


class DegenerateTriangleError(ValueError):
    """Raised when a triangle has zero area."""


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Point2:
    """Point or vector in the plane with exact rational coordinates."""

    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Point2:
        return Point2(-self.x, -self.y)

    def __mul__(self, scale: Fraction | int) -> Point2:
        return Point2(self.x * scale, self.y * scale)

    __rmul__ = __mul__

    def __truediv__(self, scale: Fraction | int) -> Point2:
        return Point2(self.x / scale, self.y / scale)

    def dot(self, other: Point2) -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Point2) -> Fraction:
        return self.x * other.y - self.y * other.x

    def rotated_cw(self) -> Point2:
        """``(y, -x)``; for a gradient this is ∇⊥."""
        return Point2(self.y, -self.x)

    def norm2(self) -> Fraction:
        return self.dot(self)

    def as_float(self) -> np.ndarray:
        return np.array([float(self.x), float(self.y)])


EX = Point2(1, 0)
EY = Point2(0, 1)


# ---------------------------------------------------------------------------
# Triangles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeFrame:
    """Edge ``e_i`` opposite vertex i: tangent ``v_{i+2} − v_{i+1}`` and outward rotation."""

    tangent: Point2
    normal: Point2
    length2: Fraction


@dataclass(frozen=True)
class Triangle:
    vertices: tuple[Point2, Point2, Point2]

    def __post_init__(self) -> None:
        if len(self.vertices) != 3:
            raise ValueError("a triangle has three vertices")
        if self.signed_area2 == 0:
            raise DegenerateTriangleError(f"degenerate triangle {self.vertices}")

    @classmethod
    def of(cls, *coords: tuple[Fraction | int | str, Fraction | int | str]) -> Triangle:
        return cls(tuple(Point2(Fraction(x), Fraction(y)) for x, y in coords))  # type: ignore[arg-type]

    @cached_property
    def signed_area2(self) -> Fraction:
        v0, v1, v2 = self.vertices
        return (v1 - v0).cross(v2 - v0)

    @property
    def area(self) -> Fraction:
        return abs(self.signed_area2) / 2

    @property
    def is_positive(self) -> bool:
        return self.signed_area2 > 0

    def canonical(self) -> Triangle:
        """Same triangle with counterclockwise vertex order."""
        if self.is_positive:
            return self
        v0, v1, v2 = self.vertices
        return Triangle((v0, v2, v1))

    def edge_vector(self, i: int, j: int) -> Point2:
        """``t_{i,j} = v_j − v_i``."""
        return self.vertices[j] - self.vertices[i]

    @cached_property
    def grad_lambda(self) -> tuple[Point2, Point2, Point2]:
        return barycentric_gradients(self)

    def barycentric(self, p: Point2) -> tuple[Fraction, Fraction, Fraction]:
        v0 = self.vertices[0]
        l1 = self.grad_lambda[1].dot(p - v0)
        l2 = self.grad_lambda[2].dot(p - v0)
        return (1 - l1 - l2, l1, l2)

    def translated(self, shift: Point2) -> Triangle:
        return Triangle(tuple(v + shift for v in self.vertices))  # type: ignore[arg-type]

    def as_float(self) -> np.ndarray:
        return np.array([v.as_float() for v in self.vertices])


def barycentric_gradients(triangle: Triangle) -> tuple[Point2, Point2, Point2]:
    """Return ``∇λ₀, ∇λ₁, ∇λ₂``.

    Raises
    ------
    DegenerateTriangleError
        If the triangle has zero area.
    """
    v = triangle.vertices
    area2 = triangle.signed_area2
    if area2 == 0:
        raise DegenerateTriangleError("degenerate triangle has no barycentric gradients")
    return tuple(  # type: ignore[return-value]
        Point2(
            (v[(i + 1) % 3].y - v[(i + 2) % 3].y) / area2,
            (v[(i + 2) % 3].x - v[(i + 1) % 3].x) / area2,
        )
        for i in range(3)
    )


def edge_frame(triangle: Triangle, i: int) -> EdgeFrame:
    """Tangent ``v_{i+2} − v_{i+1}`` of edge ``e_i`` and its outward rotation."""
    if i not in (0, 1, 2):
        raise ValueError(f"edge index must be 0, 1 or 2, got {i}")
    tangent = triangle.edge_vector((i + 1) % 3, (i + 2) % 3)
    normal = tangent.rotated_cw() if triangle.is_positive else -tangent.rotated_cw()
    return EdgeFrame(tangent, normal, tangent.norm2())


# ---------------------------------------------------------------------------
# Barycentric refinement
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MacroTriangle:
    """Counterclockwise triangle split at its barycenter into ``T₀, T₁, T₂``.

    ``T_i`` is opposite ``v_i`` and has vertices ``(v_{i+1}, v_{i+2}, v_c)``.
    """

    parent: Triangle

    def __post_init__(self) -> None:
        if not self.parent.is_positive:
            raise ValueError("macro triangles must be counterclockwise; canonicalize first")

    @cached_property
    def barycenter(self) -> Point2:
        v0, v1, v2 = self.parent.vertices
        return (v0 + v1 + v2) / 3

    def vertex(self, i: Vertex) -> Point2:
        return self.barycenter if i == "c" else self.parent.vertices[i]

    def t(self, i: Vertex, j: Vertex) -> Point2:
        """Edge vector ``t_{i,j} = v_j − v_i``; either index may be ``"c"``."""
        return self.vertex(j) - self.vertex(i)

    @cached_property
    def subtriangles(self) -> tuple[Triangle, Triangle, Triangle]:
        v = self.parent.vertices
        return tuple(  # type: ignore[return-value]
            Triangle((v[(i + 1) % 3], v[(i + 2) % 3], self.barycenter)) for i in range(3)
        )

    @property
    def area(self) -> Fraction:
        return self.parent.area

    @property
    def area2(self) -> Fraction:
        return self.parent.signed_area2

    @property
    def grad_lambda(self) -> tuple[Point2, Point2, Point2]:
        return self.parent.grad_lambda

    @cached_property
    def edge_frames(self) -> tuple[EdgeFrame, EdgeFrame, EdgeFrame]:
        return tuple(edge_frame(self.parent, i) for i in range(3))  # type: ignore[return-value]

    def normal(self, i: int) -> Point2:
        """Outward normal of ``e_i`` scaled by ``|e_i|``."""
        return self.edge_frames[i].normal

    def c(self, i: int, j: int) -> Fraction:
        """``∇λᵢ · n_j`` with the outward normal scaled by ``|e_j|``."""
        return self.grad_lambda[i].dot(self.normal(j))

    @cached_property
    def airy_constant(self) -> Fraction:
        """``C_T = 4|T|²/9``."""
        return Fraction(4, 9) * self.area**2

    def shape_key(self) -> MacroTriangle:
        """Translate so that ``v₀`` sits at the origin."""
        origin = self.parent.vertices[0]
        if origin.x == 0 and origin.y == 0:
            return self
        return MacroTriangle(self.parent.translated(-origin))


def refine_barycentric(triangle: Triangle) -> MacroTriangle:
    """Barycentric split of *triangle* (reoriented counterclockwise if needed)."""
    return MacroTriangle(triangle.canonical())


def random_rational_triangle(
    rng: np.random.Generator, denominator: int = 7, span: int = 3
) -> Triangle:
    """Counterclockwise triangle with random coordinates in ``[-span, span]`` on a ``1/denominator`` grid."""
    bound = span * denominator
    while True:
        coords = rng.integers(-bound, bound + 1, size=(3, 2))
        points = tuple(Point2(Fraction(int(x), denominator), Fraction(int(y), denominator)) for x, y in coords)
        v0, v1, v2 = points
        # reject slivers so the trial set stays well shaped
        area2 = (v1 - v0).cross(v2 - v0)
        if area2 != 0 and abs(area2) * 4 >= max((a - b).norm2() for a, b in ((v0, v1), (v1, v2), (v2, v0))):
            return Triangle(points).canonical()  # type: ignore[arg-type]


REFERENCE_TRIANGLE = Triangle.of((0, 0), (1, 0), (0, 1))

__all__ = [
    "DegenerateTriangleError",
    "EX",
    "EY",
    "EdgeFrame",
    "MacroTriangle",
    "Point2",
    "REFERENCE_TRIANGLE",
    "Triangle",
    "barycentric_gradients",
    "edge_frame",
    "random_rational_triangle",
    "refine_barycentric",
]
