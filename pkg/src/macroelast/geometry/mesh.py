"""Mesh module – conforming triangulations, mesh files and uniform refinement."""

from __future__ import annotations

import io
import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from math import sqrt
from typing import TextIO

from marshmallow import ValidationError

from macroelast.geometry import MacroTriangle, Point2, Triangle
from macroelast.validation import validate_header, validate_triangle, validate_vertex

logger = logging.getLogger(__name__)


class MeshFormatError(ValueError):
    """Raised when a mesh file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class NonconformingMeshError(ValueError):
    """Raised for hanging nodes, overlapping triangles or edges shared by more than two triangles."""


class InvertedTriangleError(ValueError):
    """Raised when a clockwise triangle is given and reorientation is disabled."""


Edge = tuple[int, int]


@dataclass(frozen=True)
class Mesh:
    """Conforming triangulation with counterclockwise triangles.

    Edges are vertex pairs ``(lo, hi)`` with ``lo < hi`` (the global edge
    orientation), sorted lexicographically.
    """

    vertices: tuple[Point2, ...]
    triangles: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        for t, tri in enumerate(self.triangles):
            if not self.triangle(t).is_positive:
                raise InvertedTriangleError(f"triangle {t} {tri} is clockwise")
        for edge, incident in self.edge_triangles.items():
            if len(incident) > 2:
                raise NonconformingMeshError(f"nonconforming: edge {edge} has {len(incident)} triangles")
            if len(incident) == 2 and self._direction(incident[0], edge) == self._direction(incident[1], edge):
                raise NonconformingMeshError(f"nonconforming: triangles {incident} overlap along edge {edge}")
        for edge in self.boundary_edges:
            a, b = (self.vertices[i] for i in self.edges[edge])
            for v, p in enumerate(self.vertices):
                if v in self.edges[edge]:
                    continue
                if (b - a).cross(p - a) == 0 and 0 < (p - a).dot(b - a) < (b - a).norm2():
                    raise NonconformingMeshError(f"nonconforming: hanging node {v} on edge {self.edges[edge]}")

    # -- derived connectivity -------------------------------------------------

    @classmethod
    def from_arrays(
        cls,
        vertices: list[Point2] | tuple[Point2, ...],
        triangles: list[tuple[int, int, int]] | tuple[tuple[int, int, int], ...],
        canonicalize: bool = True,
    ) -> Mesh:
        vertices = tuple(vertices)
        fixed: list[tuple[int, int, int]] = []
        for tri in triangles:
            i, j, k = tri
            if canonicalize and Triangle((vertices[i], vertices[j], vertices[k])).signed_area2 < 0:
                fixed.append((i, k, j))
            else:
                fixed.append((i, j, k))
        return cls(vertices, tuple(fixed))

    def triangle(self, t: int) -> Triangle:
        return Triangle(tuple(self.vertices[i] for i in self.triangles[t]))  # type: ignore[arg-type]

    def macro(self, t: int) -> MacroTriangle:
        return MacroTriangle(self.triangle(t))

    @staticmethod
    def local_edge(tri: tuple[int, int, int], i: int) -> Edge:
        a, b = tri[(i + 1) % 3], tri[(i + 2) % 3]
        return (a, b) if a < b else (b, a)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(sorted({self.local_edge(tri, i) for tri in self.triangles for i in range(3)}))

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {edge: e for e, edge in enumerate(self.edges)}

    @cached_property
    def edge_triangles(self) -> dict[Edge, tuple[int, ...]]:
        incident: dict[Edge, list[int]] = defaultdict(list)
        for t, tri in enumerate(self.triangles):
            for i in range(3):
                incident[self.local_edge(tri, i)].append(t)
        return {edge: tuple(ts) for edge, ts in incident.items()}

    @cached_property
    def vertex_triangles(self) -> tuple[tuple[int, ...], ...]:
        incident: list[list[int]] = [[] for _ in self.vertices]
        for t, tri in enumerate(self.triangles):
            for v in tri:
                incident[v].append(t)
        return tuple(tuple(ts) for ts in incident)

    def triangle_edges(self, t: int) -> tuple[int, int, int]:
        """Global edge indices of the local edges ``e₀, e₁, e₂`` of triangle *t*."""
        tri = self.triangles[t]
        return tuple(self.edge_index[self.local_edge(tri, i)] for i in range(3))  # type: ignore[return-value]

    def _direction(self, t: int, edge: Edge) -> bool:
        tri = self.triangles[t]
        for i in range(3):
            if (tri[i], tri[(i + 1) % 3]) == edge:
                return True
        return False

    @cached_property
    def boundary_edges(self) -> tuple[int, ...]:
        return tuple(e for e, edge in enumerate(self.edges) if len(self.edge_triangles[edge]) == 1)

    @property
    def interior_edges(self) -> tuple[int, ...]:
        return tuple(e for e, edge in enumerate(self.edges) if len(self.edge_triangles[edge]) == 2)

    # -- topology -------------------------------------------------------------

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.triangles)

    def is_connected(self) -> bool:
        """Connectivity of the dual graph (triangles sharing an edge)."""
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for e in self.triangle_edges(t):
                for s in self.edge_triangles[self.edges[e]]:
                    if s not in seen:
                        seen.add(s)
                        stack.append(s)
        return len(seen) == len(self.triangles)

    def is_simply_connected(self) -> bool:
        return self.euler_characteristic == 1 and self.is_connected()

    @property
    def h(self) -> float:
        """Largest edge length."""
        return max(sqrt(float((self.vertices[a] - self.vertices[b]).norm2())) for a, b in self.edges)

    # -- refinement -----------------------------------------------------------

    def refine_uniform(self) -> Mesh:
        """Red refinement: every triangle is split into four by its edge midpoints."""
        nv = len(self.vertices)
        midpoints = [
            (self.vertices[a] + self.vertices[b]) / 2 for a, b in self.edges
        ]
        children: list[tuple[int, int, int]] = []
        for tri in self.triangles:
            m0, m1, m2 = (nv + self.edge_index[self.local_edge(tri, i)] for i in range(3))
            v0, v1, v2 = tri
            children.extend([(v0, m2, m1), (m2, v1, m0), (m1, m0, v2), (m0, m1, m2)])
        logger.debug("refined %d triangles into %d", len(self.triangles), len(children))
        return Mesh(self.vertices + tuple(midpoints), tuple(children))


# ---------------------------------------------------------------------------
# Mesh files
# ---------------------------------------------------------------------------


def load_mesh(stream: TextIO | str, canonicalize: bool = True) -> Mesh:
    """Parse a mesh file.

    The format is a header ``nv nt`` followed by ``nv`` vertex lines ``x y``
    (integers, decimals or ``p/q``) and ``nt`` triangle lines ``i j k`` with
    zero-based vertex indices.  Blank lines and lines starting with ``#``
    are ignored.

    Parameters
    ----------
    stream:
        Open text stream or the file contents as a string.
    canonicalize:
        Reorient clockwise triangles instead of rejecting them.

    Raises
    ------
    MeshFormatError
        On malformed records, with the offending line number.
    NonconformingMeshError
        On hanging nodes or overlapping triangles.
    InvertedTriangleError
        On a clockwise triangle when ``canonicalize`` is false.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    records = [
        (number, line.split())
        for number, line in enumerate(stream, start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not records:
        raise MeshFormatError("empty mesh file")

    try:
        number, tokens = records[0]
        nv, nt = validate_header(tokens)
        if len(records) != 1 + nv + nt:
            raise MeshFormatError(
                f"expected {nv} vertices and {nt} triangles, found {len(records) - 1} records", number
            )
        vertices = []
        for number, tokens in records[1 : 1 + nv]:
            vertices.append(Point2(*validate_vertex(tokens)))
        triangles = []
        for number, tokens in records[1 + nv :]:
            triangles.append(validate_triangle(tokens, nv))
    except ValidationError as exc:
        raise MeshFormatError(str(exc.messages), number) from exc

    mesh = Mesh.from_arrays(vertices, triangles, canonicalize=canonicalize)
    logger.info(
        "loaded mesh: %d vertices, %d edges, %d triangles",
        len(mesh.vertices),
        len(mesh.edges),
        len(mesh.triangles),
    )
    return mesh


def dump_mesh(mesh: Mesh) -> str:
    """Serialize *mesh* in the mesh file format (exact ``p/q`` coordinates)."""
    lines = [f"{len(mesh.vertices)} {len(mesh.triangles)}"]
    lines += [f"{v.x} {v.y}" for v in mesh.vertices]
    lines += [" ".join(str(i) for i in tri) for tri in mesh.triangles]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Built-in meshes
# ---------------------------------------------------------------------------


def reference_mesh() -> Mesh:
    return Mesh.from_arrays([Point2(0, 0), Point2(1, 0), Point2(0, 1)], [(0, 1, 2)])


def unit_square(refinements: int = 0) -> Mesh:
    """Unit square split along its diagonal, then red-refined *refinements* times."""
    mesh = Mesh.from_arrays(
        [Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)],
        [(0, 1, 2), (0, 2, 3)],
    )
    for _ in range(refinements):
        mesh = mesh.refine_uniform()
    return mesh


BUILTIN_MESHES = {
    "reference": reference_mesh,
    "square": lambda: unit_square(0),
    "square8": lambda: unit_square(1),
    "square32": lambda: unit_square(2),
}


def builtin_mesh(name: str) -> Mesh:
    try:
        return BUILTIN_MESHES[name]()
    except KeyError:
        raise ValueError(
            f"unknown built-in mesh '{name}' (choose from {', '.join(BUILTIN_MESHES)})"
        ) from None


def resolve_mesh(target: str) -> Mesh:
    """``builtin:<name>`` or a path to a mesh file."""
    if target.startswith("builtin:"):
        return builtin_mesh(target.split(":", 1)[1])
    with open(target, encoding="utf-8") as f:
        return load_mesh(f)


__all__ = [
    "InvertedTriangleError",
    "Mesh",
    "MeshFormatError",
    "NonconformingMeshError",
    "builtin_mesh",
    "dump_mesh",
    "load_mesh",
    "reference_mesh",
    "resolve_mesh",
    "unit_square",
]
