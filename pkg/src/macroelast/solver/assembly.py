"""Assembly module – floating-point Gram matrices, loads and boundary data.

Exact nodal bases are evaluated once per element shape at the points of a
:class:`~macroelast.solver.quadrature.MacroRule`; conversion to floats
happens here and nowhere earlier.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from macroelast.elements import LocalElement
from macroelast.elements.dofs import Entity, bernstein_tests
from macroelast.poly import BaryPoly, monomials
from macroelast.schema import MaterialLaw
from macroelast.solver.quadrature import EdgeRule, MacroRule
from macroelast.spaces import GlobalSpace

logger = logging.getLogger(__name__)

VectorFunction = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]]
TensorFunction = Callable[[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]


# ---------------------------------------------------------------------------
# Basis tables
# ---------------------------------------------------------------------------


def _piece_values(components, rule: MacroRule) -> np.ndarray:
    """Component values at the rule points, shape ``(ncomp, npoints)``."""
    out = np.zeros((len(components), len(rule.weights)))
    for c, scalar in enumerate(components):
        for j, rows in enumerate(rule.pieces):
            piece = scalar.pieces[j]
            if not piece.is_zero():
                out[c, rows] = piece.evaluate_many(rule.barycentric[rows])
    return out


@lru_cache(maxsize=None)
def basis_table(element: LocalElement, rule: MacroRule) -> np.ndarray:
    """Nodal basis of *element* at the rule points, shape ``(nbasis, ncomp, npoints)``."""
    table = np.stack([_piece_values(phi.components, rule) for phi in element.nodal_basis])
    logger.debug("tabulated %r at %d points", element, len(rule.weights))
    return table


@lru_cache(maxsize=None)
def moment_table(k: int, rule: MacroRule) -> np.ndarray:
    """Weights ``λ^β e_c`` of the displacement moment DoFs, shape ``(ndofs, 2, npoints)``."""
    alphas = monomials(k - 1)
    table = np.zeros((2 * len(alphas), 2, len(rule.weights)))
    for position, alpha in enumerate(alphas):
        values = BaryPoly.monomial(alpha).evaluate_many(rule.barycentric)
        for comp in (0, 1):
            table[2 * position + comp, comp] = values
    return table


def _scatter(space: GlobalSpace, t: int) -> tuple[np.ndarray, np.ndarray]:
    local = space.local_to_global(t)
    return np.array([d.global_index for d in local]), np.array([d.sign for d in local], dtype=float)


def _frobenius_weights() -> np.ndarray:
    # σ:τ on the (xx, xy, yy) storage
    return np.array([1.0, 2.0, 1.0])


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------


def compliance_matrix(space: GlobalSpace, material: MaterialLaw, rule: MacroRule) -> np.ndarray:
    """``(Aσ, τ)`` on the global stress basis."""
    n = space.dim
    out = np.zeros((n, n))
    scale = 1 / (2 * material.mu)
    shrink = material.lame_lambda / (2 * material.mu + 2 * material.lame_lambda)
    frob = _frobenius_weights()
    for t in range(len(space.mesh.triangles)):
        table = basis_table(space.element(t), rule)
        w = rule.weights * float(space.macro(t).area)
        inner = np.einsum("aiq,biq,i,q->ab", table, table, frob, w)
        trace = table[:, 0] + table[:, 2]
        trace_term = np.einsum("aq,bq,q->ab", trace, trace, w)
        idx, sign = _scatter(space, t)
        out[np.ix_(idx, idx)] += np.outer(sign, sign) * scale * (inner - shrink * trace_term)
    return out


def stress_mass(space: GlobalSpace, rule: MacroRule) -> np.ndarray:
    """L² Gram matrix ``(σ, τ)`` of the global stress basis."""
    n = space.dim
    out = np.zeros((n, n))
    frob = _frobenius_weights()
    for t in range(len(space.mesh.triangles)):
        table = basis_table(space.element(t), rule)
        w = rule.weights * float(space.macro(t).area)
        idx, sign = _scatter(space, t)
        out[np.ix_(idx, idx)] += np.outer(sign, sign) * np.einsum("aiq,biq,i,q->ab", table, table, frob, w)
    return out


def displacement_mass(space: GlobalSpace, rule: MacroRule) -> np.ndarray:
    """L² Gram matrix of the nodal displacement basis (block diagonal)."""
    n = space.dim
    out = np.zeros((n, n))
    for t in range(len(space.mesh.triangles)):
        table = basis_table(space.element(t), rule)
        w = rule.weights * float(space.macro(t).area)
        idx, _ = _scatter(space, t)
        out[np.ix_(idx, idx)] += np.einsum("aiq,biq,q->ab", table, table, w)
    return out


# ---------------------------------------------------------------------------
# Loads
# ---------------------------------------------------------------------------


def physical_points(space: GlobalSpace, t: int, rule: MacroRule) -> tuple[np.ndarray, np.ndarray]:
    xy = rule.physical(space.mesh.triangle(t).as_float())
    return xy[:, 0], xy[:, 1]


def load_moments(space: GlobalSpace, f: VectorFunction, rule: MacroRule) -> np.ndarray:
    """Displacement DoF values ``∫_T f·λ^β e_c dx / |T|`` of a body force."""
    out = np.zeros(space.dim)
    weights = moment_table(space.k, rule)
    for t in range(len(space.mesh.triangles)):
        x, y = physical_points(space, t, rule)
        values = np.stack([np.broadcast_to(np.asarray(c, dtype=float), x.shape) for c in f(x, y)])
        idx, _ = _scatter(space, t)
        out[idx] = np.einsum("aiq,iq,q->a", weights, values, rule.weights)
    return out


def rigid_motion_constraints(space: GlobalSpace, rule: MacroRule) -> np.ndarray:
    """``∫ r·φ_v`` for the rigid motions ``(1,0), (0,1), (−y,x)``, shape ``(3, dim)``."""
    out = np.zeros((3, space.dim))
    for t in range(len(space.mesh.triangles)):
        table = basis_table(space.element(t), rule)
        w = rule.weights * float(space.macro(t).area)
        x, y = physical_points(space, t, rule)
        ones, zeros = np.ones_like(x), np.zeros_like(x)
        motions = np.stack([np.stack([ones, zeros]), np.stack([zeros, ones]), np.stack([-y, x])])
        idx, _ = _scatter(space, t)
        out[:, idx] += np.einsum("riq,aiq,q->ra", motions, table, w)
    return out


# ---------------------------------------------------------------------------
# Boundary edges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryEdge:
    """A boundary edge seen from its triangle: local index, ordered vertices and outward normal."""

    edge: int
    triangle: int
    local: int
    start: np.ndarray
    end: np.ndarray
    normal: np.ndarray
    first: int
    second: int


def boundary_edges(space: GlobalSpace) -> list[BoundaryEdge]:
    mesh = space.mesh
    out = []
    for e in mesh.boundary_edges:
        (t,) = mesh.edge_triangles[mesh.edges[e]]
        i = mesh.triangle_edges(t).index(e)
        first, second = space.orientation(t).edge_order[i]
        vertices = mesh.triangle(t).as_float()
        out.append(
            BoundaryEdge(e, t, i, vertices[first], vertices[second], space.macro(t).normal(i).as_float(), first, second)
        )
    return out


def _edge_points(edge: BoundaryEdge, rule: EdgeRule) -> tuple[np.ndarray, np.ndarray]:
    xy = np.outer(rule.points[:, 0], edge.start) + np.outer(rule.points[:, 1], edge.end)
    return xy[:, 0], xy[:, 1]


def _edge_barycentric(edge: BoundaryEdge, rule: EdgeRule) -> np.ndarray:
    bary = np.zeros((len(rule.weights), 3))
    bary[:, edge.first] = rule.points[:, 0]
    bary[:, edge.second] = rule.points[:, 1]
    return bary


def boundary_dofs(space: GlobalSpace) -> np.ndarray:
    """Global stress DoFs living on boundary edges."""
    per_edge = space.counts.edge
    return np.array(
        [space.global_index(Entity.EDGE, e, s) for e in space.mesh.boundary_edges for s in range(per_edge)],
        dtype=int,
    )


def boundary_stress_values(space: GlobalSpace, sigma: TensorFunction, rule: EdgeRule) -> dict[int, float]:
    """Edge DoF values of a stress field on the boundary, in global sign convention."""
    tests = bernstein_tests(space.k)
    values: dict[int, float] = {}
    for edge in boundary_edges(space):
        x, y = _edge_points(edge, rule)
        xx, xy, yy = (np.broadcast_to(np.asarray(c, dtype=float), x.shape) for c in sigma(x, y))
        n = edge.normal
        traction = np.stack([xx * n[0] + xy * n[1], xy * n[0] + yy * n[1]])
        directions = {0: edge.end - edge.start, 1: n}
        element = space.element(edge.triangle)
        for dof, local in zip(element.dofs, space.local_to_global(edge.triangle)):
            if dof.entity is not Entity.EDGE or dof.index != edge.local:
                continue
            p, kind = divmod(dof.slot, 2)
            weight = tests[p].evaluate_many(rule.points)
            value = np.sum(rule.weights * weight * (directions[kind] @ traction))
            values[local.global_index] = local.sign * float(value)
    return values


def displacement_load(space: GlobalSpace, u_boundary: VectorFunction, rule: EdgeRule) -> np.ndarray:
    """``⟨u_D, τn⟩`` on the global stress basis."""
    out = np.zeros(space.dim)
    for edge in boundary_edges(space):
        x, y = _edge_points(edge, rule)
        ux, uy = (np.broadcast_to(np.asarray(c, dtype=float), x.shape) for c in u_boundary(x, y))
        bary = _edge_barycentric(edge, rule)
        element = space.element(edge.triangle)
        n = edge.normal
        for phi, local in zip(element.nodal_basis, space.local_to_global(edge.triangle)):
            xx, xy, yy = (c.pieces[edge.local].evaluate_many(bary) for c in phi.components)
            traction = (ux * (xx * n[0] + xy * n[1]) + uy * (xy * n[0] + yy * n[1]))
            out[local.global_index] += local.sign * float(np.sum(rule.weights * traction))
    return out


__all__ = [
    "BoundaryEdge",
    "basis_table",
    "boundary_dofs",
    "boundary_edges",
    "boundary_stress_values",
    "compliance_matrix",
    "displacement_load",
    "displacement_mass",
    "load_moments",
    "moment_table",
    "physical_points",
    "rigid_motion_constraints",
    "stress_mass",
]
