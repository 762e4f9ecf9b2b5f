"""Tests for meshes, mesh files and uniform refinement."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

from macroelast.geometry import Point2
from macroelast.geometry.mesh import (
    InvertedTriangleError,
    Mesh,
    MeshFormatError,
    NonconformingMeshError,
    builtin_mesh,
    dump_mesh,
    load_mesh,
    reference_mesh,
    resolve_mesh,
    unit_square,
)

SQUARE = """\
# unit square
4 2
0 0
1 0
1 1
0 1
0 1 2
0 2 3
"""

ANNULUS = """\
8 8
0 0
3 0
3 3
0 3
1 1
2 1
2 2
1 2
0 1 5
0 5 4
1 2 6
1 6 5
2 3 7
2 7 6
3 0 4
3 4 7
"""


class TestLoadMesh:
    def test_square(self) -> None:
        mesh = load_mesh(SQUARE)
        assert len(mesh.vertices) == 4
        assert len(mesh.triangles) == 2
        assert len(mesh.edges) == 5
        assert len(mesh.boundary_edges) == 4
        assert len(mesh.interior_edges) == 1

    def test_fraction_coordinates(self) -> None:
        mesh = load_mesh("3 1\n0 0\n1/3 0\n0 0.5\n0 1 2\n")
        assert mesh.vertices[1].x == Fraction(1, 3)
        assert mesh.vertices[2].y == Fraction(1, 2)

    def test_reorients_clockwise(self) -> None:
        mesh = load_mesh("3 1\n0 0\n0 1\n1 0\n0 1 2\n")
        assert mesh.triangle(0).is_positive

    def test_clockwise_rejected_without_canonicalize(self) -> None:
        with pytest.raises(InvertedTriangleError):
            load_mesh("3 1\n0 0\n0 1\n1 0\n0 1 2\n", canonicalize=False)

    def test_bad_coordinate_reports_line(self) -> None:
        with pytest.raises(MeshFormatError, match="line 3"):
            load_mesh("3 1\n0 0\n1 abc\n0 1\n0 1 2\n")

    def test_index_out_of_range(self) -> None:
        with pytest.raises(MeshFormatError):
            load_mesh("3 1\n0 0\n1 0\n0 1\n0 1 3\n")

    def test_repeated_index(self) -> None:
        with pytest.raises(MeshFormatError):
            load_mesh("3 1\n0 0\n1 0\n0 1\n0 1 1\n")

    def test_record_count_mismatch(self) -> None:
        with pytest.raises(MeshFormatError, match="expected 3 vertices"):
            load_mesh("3 2\n0 0\n1 0\n0 1\n0 1 2\n")

    def test_empty(self) -> None:
        with pytest.raises(MeshFormatError, match="empty"):
            load_mesh("# nothing\n\n")

    def test_hanging_node(self) -> None:
        text = "5 3\n0 0\n2 0\n0 2\n1 0\n2 2\n0 1 2\n1 4 2\n0 3 2\n"
        with pytest.raises(NonconformingMeshError):
            load_mesh(text)

    def test_dump_then_load(self) -> None:
        mesh = unit_square(1)
        again = load_mesh(dump_mesh(mesh))
        assert again.vertices == mesh.vertices
        assert again.triangles == mesh.triangles


class TestTopology:
    def test_square_is_simply_connected(self) -> None:
        mesh = load_mesh(SQUARE)
        assert mesh.euler_characteristic == 1
        assert mesh.is_simply_connected()

    def test_annulus_is_not(self) -> None:
        mesh = load_mesh(ANNULUS)
        assert mesh.euler_characteristic == 0
        assert mesh.is_connected()
        assert not mesh.is_simply_connected()

    def test_overlapping_triangles(self) -> None:
        vertices = [Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(1, 1)]
        with pytest.raises(NonconformingMeshError):
            Mesh(tuple(vertices), ((0, 1, 2), (0, 1, 3)))


class TestRefinement:
    def test_counts(self) -> None:
        mesh = unit_square(0).refine_uniform()
        assert len(mesh.triangles) == 8
        assert len(mesh.vertices) == 9
        assert mesh.is_simply_connected()

    def test_h_halves(self) -> None:
        coarse = unit_square(0)
        fine = coarse.refine_uniform()
        assert fine.h == pytest.approx(coarse.h / 2)

    def test_children_are_counterclockwise(self) -> None:
        mesh = unit_square(2)
        assert all(mesh.triangle(t).is_positive for t in range(len(mesh.triangles)))


class TestBuiltinMeshes:
    @pytest.mark.parametrize(("name", "count"), [("reference", 1), ("square", 2), ("square8", 8), ("square32", 32)])
    def test_sizes(self, name: str, count: int) -> None:
        assert len(builtin_mesh(name).triangles) == count

    def test_unknown(self) -> None:
        with pytest.raises(ValueError, match="unknown built-in mesh"):
            builtin_mesh("disk")

    def test_resolve_file(self, tmp_path: Path) -> None:
        path = tmp_path / "square.mesh"
        path.write_text(SQUARE)
        assert len(resolve_mesh(str(path)).triangles) == 2

    def test_resolve_builtin(self) -> None:
        assert resolve_mesh("builtin:reference").triangles == reference_mesh().triangles
