"""Tests for exact triangles and the barycentric split."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from macroelast.geometry import (
    DegenerateTriangleError,
    MacroTriangle,
    Point2,
    Triangle,
    edge_frame,
    random_rational_triangle,
    refine_barycentric,
)


class TestTriangle:
    def test_area_and_orientation(self) -> None:
        tri = Triangle.of((0, 0), (2, 0), (0, 1))
        assert tri.area == 1
        assert tri.is_positive

    def test_degenerate_rejected(self) -> None:
        with pytest.raises(DegenerateTriangleError):
            Triangle.of((0, 0), (1, 1), (2, 2))

    def test_accepts_fraction_strings(self) -> None:
        tri = Triangle.of(("1/3", 0), (1, 0), (0, "1/2"))
        assert tri.vertices[0].x == Fraction(1, 3)

    def test_canonical_reorients(self) -> None:
        tri = Triangle.of((0, 0), (0, 1), (1, 0))
        assert not tri.is_positive
        assert tri.canonical().is_positive

    def test_barycentric_gradients(self) -> None:
        tri = Triangle.of((1, 1), (4, 2), (2, 5))
        grads = tri.grad_lambda
        assert grads[0] + grads[1] + grads[2] == Point2(0, 0)
        for i in range(3):
            for j in range(3):
                value = grads[i].dot(tri.vertices[j] - tri.vertices[(i + 1) % 3])
                assert value == (1 if i == j else 0)

    def test_barycentric_coordinates(self) -> None:
        tri = Triangle.of((0, 0), (3, 0), (0, 3))
        assert tri.barycentric(Point2(1, 1)) == (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))

    def test_edge_frame_is_outward(self) -> None:
        tri = Triangle.of((0, 0), (1, 0), (0, 1))
        frame = edge_frame(tri, 2)
        assert frame.tangent == Point2(1, 0)
        assert frame.normal == Point2(0, -1)
        assert frame.length2 == 1

    def test_edge_frame_index(self) -> None:
        with pytest.raises(ValueError, match="edge index"):
            edge_frame(Triangle.of((0, 0), (1, 0), (0, 1)), 3)


class TestMacroTriangle:
    def test_barycenter_and_pieces(self) -> None:
        macro = refine_barycentric(Triangle.of((0, 0), (3, 0), (0, 3)))
        assert macro.barycenter == Point2(1, 1)
        assert sum(t.area for t in macro.subtriangles) == macro.area
        for t in macro.subtriangles:
            assert t.is_positive

    def test_clockwise_rejected(self) -> None:
        with pytest.raises(ValueError, match="counterclockwise"):
            MacroTriangle(Triangle.of((0, 0), (0, 1), (1, 0)))

    def test_refine_canonicalizes(self) -> None:
        macro = refine_barycentric(Triangle.of((0, 0), (0, 1), (1, 0)))
        assert macro.parent.is_positive

    def test_shape_key_is_translation_invariant(self) -> None:
        first = MacroTriangle(Triangle.of((0, 0), (2, 0), (1, 1)))
        second = MacroTriangle(Triangle.of((5, "1/2"), (7, "1/2"), (6, "3/2")))
        assert first.shape_key() == second.shape_key()

    def test_airy_constant(self) -> None:
        macro = MacroTriangle(Triangle.of((0, 0), (3, 0), (0, 2)))
        assert macro.airy_constant == Fraction(4, 9) * 9

    def test_normal_pairing(self) -> None:
        macro = MacroTriangle(Triangle.of((0, 0), (1, 0), (0, 1)))
        for j in range(3):
            assert sum(macro.c(i, j) for i in range(3)) == 0
            assert macro.c(j, j) == -macro.edge_frames[j].length2 / (2 * macro.area)


class TestRandomTriangle:
    def test_reproducible(self) -> None:
        first = random_rational_triangle(np.random.default_rng(3))
        second = random_rational_triangle(np.random.default_rng(3))
        assert first == second
        assert first.is_positive
