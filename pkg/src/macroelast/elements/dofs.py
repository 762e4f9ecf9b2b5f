"""DoF functionals module – linear functionals on piecewise fields and their orientation.

A functional is tagged with the mesh entity it belongs to (vertex, edge or
cell), a slot inside that entity, a block label used by the unisolvence
report, and whether it flips sign with the edge normal.  Edge functionals
read their test polynomials in the *global* vertex order of the edge
(``edge_order``) and use the local outward normal; the global value is the
local one times ``normal_sign`` when the functional is odd.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from macroelast.geometry import MacroTriangle, Point2
from macroelast.linalg import Matrix
from macroelast.poly import BaryPoly, EdgePoly

LocalEdge = tuple[int, int]


class Entity(str, Enum):
    VERTEX = "vertex"
    EDGE = "edge"
    CELL = "cell"


@dataclass(frozen=True)
class ElementOrientation:
    """Vertex pairs of the local edges sorted by global vertex id."""

    edge_order: tuple[LocalEdge, LocalEdge, LocalEdge] = ((1, 2), (0, 2), (0, 1))

    @classmethod
    def from_global(cls, vertex_ids: Sequence[int]) -> ElementOrientation:
        pairs = []
        for i in range(3):
            a, b = (i + 1) % 3, (i + 2) % 3
            pairs.append((a, b) if vertex_ids[a] < vertex_ids[b] else (b, a))
        return cls(tuple(pairs))  # type: ignore[arg-type]

    def normal_sign(self, i: int) -> int:
        """+1 when the global edge normal is the local outward normal."""
        return 1 if self.edge_order[i] == ((i + 1) % 3, (i + 2) % 3) else -1

    def tangent(self, macro: MacroTriangle, i: int) -> Point2:
        first, second = self.edge_order[i]
        return macro.t(first, second)


DEFAULT_ORIENTATION = ElementOrientation()


@dataclass(frozen=True)
class DoFFunctional:
    name: str
    entity: Entity
    index: int
    slot: int
    group: str
    odd: bool = False
    evaluate: Callable[[Any], Fraction] = field(default=lambda f: Fraction(0), compare=False, repr=False)

    def __call__(self, f: Any) -> Fraction:
        return self.evaluate(f)

    def global_sign(self, orientation: ElementOrientation) -> int:
        if self.odd and self.entity is Entity.EDGE:
            return orientation.normal_sign(self.index)
        return 1


def dof_matrix(functionals: Sequence[DoFFunctional], basis: Sequence[Any]) -> Matrix:
    """``N[a][b] = N_a(φ_b)``."""
    return [[f(phi) for phi in basis] for f in functionals]


def edge_moment(q: EdgePoly, test: EdgePoly) -> Fraction:
    """Rational ``r`` with ``∫_e q·test ds = r·|e|``."""
    return (q * test).integral_factor()


def bernstein_tests(degree: int) -> list[EdgePoly]:
    """Edge test monomials ``μ₀^{d−p} μ₁^p``."""
    return [EdgePoly.monomial((degree - p, p)) for p in range(degree + 1)] if degree >= 0 else []


def macro_edge_trace(piece: BaryPoly, i: int, orientation: ElementOrientation) -> EdgePoly:
    """Trace of a piece on boundary edge ``e_i`` in the global vertex order."""
    return piece.restrict_edge(i, orientation.edge_order[i])


def modified_edge_moment(trace: EdgePoly) -> Fraction:
    """``(6/|e|)∫_e g ds − 2(g(e(0)) + g(e(1)))`` on an edge trace."""
    start, end = trace.endpoint_values()
    return 6 * trace.integral_factor() - 2 * (start + end)


@dataclass
class UnisolvenceReport:
    """Exact DoF matrix of an element with its verdict.

    ``blocks`` maps ``(dof group, basis group)`` to ``"zero"``, ``"nonzero"``
    or, on the diagonal, ``"invertible"``/``"singular"``.
    """

    matrix: Matrix
    determinant: Fraction
    kernel: list[Fraction] | None = None
    blocks: dict[tuple[str, str], str] = field(default_factory=dict)
    offending_block: tuple[str, str] | None = None

    @property
    def invertible(self) -> bool:
        return self.determinant != 0 and self.offending_block is None
