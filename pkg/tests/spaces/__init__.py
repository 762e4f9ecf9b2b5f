"""Tests for the global spaces and the complex."""

from __future__ import annotations

from macroelast.geometry.mesh import Mesh, load_mesh

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


def annulus() -> Mesh:
    """A square ring of eight triangles around a square hole."""
    return load_mesh(ANNULUS)
