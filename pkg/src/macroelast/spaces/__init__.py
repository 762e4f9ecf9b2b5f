"""Global spaces module – DoF numbering of ``U_{k+2,h}``, ``Σ_{k,h}`` and ``V_{k−1,h}``.

Global DoFs are numbered vertices first, then edges in the mesh's edge
order, then triangles.  A global DoF shared by several triangles is owned
by the first of them; local element DoFs map to global ones with a sign
that is −1 only for odd edge functionals whose local outward normal is
opposite to the global edge normal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property

from macroelast.elements import LocalElement, local_element
from macroelast.elements.dofs import ElementOrientation, Entity
from macroelast.elements.stress import interior_weights
from macroelast.geometry import MacroTriangle
from macroelast.geometry.mesh import Mesh
from macroelast.poly import dim_polynomials

logger = logging.getLogger(__name__)


class ConformityError(RuntimeError):
    """Raised when a shared global DoF takes different values on two triangles."""


class Family(str, Enum):
    U = "U"
    SIGMA = "Sigma"
    V = "V"


@dataclass(frozen=True)
class EntityCounts:
    vertex: int
    edge: int
    cell: int


def entity_counts(family: Family, k: int) -> EntityCounts:
    """DoFs per vertex, edge and triangle."""
    if family is Family.U:
        return EntityCounts(3, (k - 1 if k >= 2 else 0) + k, dim_polynomials(k - 4))
    if family is Family.SIGMA:
        return EntityCounts(0, 2 * (k + 1), 3 * len(interior_weights(k)))
    return EntityCounts(0, 0, 2 * dim_polynomials(k - 1))


@dataclass(frozen=True)
class LocalDoF:
    global_index: int
    sign: int


@dataclass(frozen=True, eq=False)
class GlobalSpace:
    family: Family
    k: int
    mesh: Mesh
    counts: EntityCounts
    sign_flips: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    @property
    def name(self) -> str:
        return f"{self.family.value}(k={self.k})"

    @property
    def dim(self) -> int:
        mesh = self.mesh
        return (
            self.counts.vertex * len(mesh.vertices)
            + self.counts.edge * len(mesh.edges)
            + self.counts.cell * len(mesh.triangles)
        )

    def _offset(self, entity: Entity) -> int:
        if entity is Entity.VERTEX:
            return 0
        nv = self.counts.vertex * len(self.mesh.vertices)
        if entity is Entity.EDGE:
            return nv
        return nv + self.counts.edge * len(self.mesh.edges)

    def global_index(self, entity: Entity, number: int, slot: int) -> int:
        per = {Entity.VERTEX: self.counts.vertex, Entity.EDGE: self.counts.edge, Entity.CELL: self.counts.cell}[entity]
        if not 0 <= slot < per:
            raise IndexError(f"slot {slot} out of range for {entity.value} DoFs of {self.name}")
        return self._offset(entity) + per * number + slot

    # -- elements ---------------------------------------------------------------

    def macro(self, t: int) -> MacroTriangle:
        return self.mesh.macro(t)

    def orientation(self, t: int) -> ElementOrientation:
        return ElementOrientation.from_global(self.mesh.triangles[t])

    def element(self, t: int) -> LocalElement:
        return local_element(self.family.value, self.macro(t), self.k, self.orientation(t))

    def local_to_global(self, t: int) -> tuple[LocalDoF, ...]:
        """Global index and sign of every local DoF of triangle *t*."""
        return self._local_maps[t]

    @cached_property
    def _local_maps(self) -> tuple[tuple[LocalDoF, ...], ...]:
        maps = []
        for t, tri in enumerate(self.mesh.triangles):
            orientation = self.orientation(t)
            edges = self.mesh.triangle_edges(t)
            local: list[LocalDoF] = []
            for a, dof in enumerate(self.element(t).dofs):
                if dof.entity is Entity.VERTEX:
                    number = tri[dof.index]
                elif dof.entity is Entity.EDGE:
                    number = edges[dof.index]
                else:
                    number = t
                sign = dof.global_sign(orientation)
                if (t, a) in self.sign_flips:
                    sign = -sign
                local.append(LocalDoF(self.global_index(dof.entity, number, dof.slot), sign))
            maps.append(tuple(local))
        return tuple(maps)

    @cached_property
    def owners(self) -> tuple[tuple[int, int], ...]:
        """``(triangle, local index)`` of the first triangle holding each global DoF."""
        owner: dict[int, tuple[int, int]] = {}
        for t in range(len(self.mesh.triangles)):
            for a, dof in enumerate(self.local_to_global(t)):
                owner.setdefault(dof.global_index, (t, a))
        missing = [g for g in range(self.dim) if g not in owner]
        if missing:
            raise ConformityError(f"global DoFs {missing[:5]} of {self.name} belong to no triangle")
        return tuple(owner[g] for g in range(self.dim))

    @cached_property
    def holders(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Every ``(triangle, local index)`` holding each global DoF."""
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.dim)]
        for t in range(len(self.mesh.triangles)):
            for a, dof in enumerate(self.local_to_global(t)):
                out[dof.global_index].append((t, a))
        return tuple(tuple(h) for h in out)

    def flipped(self, t: int, local_index: int) -> GlobalSpace:
        """Copy with the sign of one local DoF reversed (a negative control for conformity checks)."""
        return replace(self, sign_flips=self.sign_flips | {(t, local_index)})


def assemble_space(mesh: Mesh, family: Family | str, k: int) -> GlobalSpace:
    """Global space of the given family and degree on *mesh*."""
    family = Family(family)
    if family is Family.U and k < 0:
        raise ValueError(f"U spaces need k >= 0, got {k}")
    if family is not Family.U and k < 1:
        raise ValueError(f"{family.value} spaces need k >= 1, got {k}")
    space = GlobalSpace(family, k, mesh, entity_counts(family, k))
    logger.info("assembled %s on %d triangles: dim %d", space.name, len(mesh.triangles), space.dim)
    return space


def dimensions(mesh: Mesh, k: int) -> dict[str, int]:
    """``dim U_{k+2,h}``, ``dim Σ_{k,h}``, ``dim V_{k−1,h}`` and the alternating sum."""
    dims = {
        "U": assemble_space(mesh, Family.U, k).dim,
        "Sigma": assemble_space(mesh, Family.SIGMA, k).dim,
        "V": assemble_space(mesh, Family.V, k).dim,
    }
    dims["alternating_sum"] = dims["U"] - 3 - dims["Sigma"] + dims["V"]
    return dims


__all__ = [
    "ConformityError",
    "EntityCounts",
    "Family",
    "GlobalSpace",
    "LocalDoF",
    "assemble_space",
    "dimensions",
    "entity_counts",
]
