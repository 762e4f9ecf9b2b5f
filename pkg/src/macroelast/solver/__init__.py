"""Solver module – mixed Hellinger–Reissner elasticity on ``Σ_{k,h} × V_{k−1,h}``.

Solves ``(Aσ, τ) + (u, div τ) = ⟨u_D, τn⟩`` and ``(div σ, v) = (f, v)``.
The ``div`` block is ``M_V D`` with ``D`` the exact divergence matrix in
displacement-moment coordinates, so ``D σ_h`` equals the moments of ``f``
(strong equilibrium).

Boundary modes:

``displacement``
    Natural data ``⟨u_D, τn⟩``; the system is nonsingular.
``traction``
    Boundary stress DoFs are eliminated with values taken from the given
    stress; the displacement is fixed up to rigid motions by multipliers
    on the rigid-motion moments.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.linalg import LinAlgError, LinAlgWarning, orth, solve

from macroelast.geometry.mesh import Mesh
from macroelast.schema import MaterialLaw
from macroelast.solver.assembly import (
    TensorFunction,
    VectorFunction,
    basis_table,
    boundary_dofs,
    boundary_stress_values,
    compliance_matrix,
    displacement_load,
    displacement_mass,
    load_moments,
    physical_points,
    rigid_motion_constraints,
)
from macroelast.solver.quadrature import MacroRule, check_degree, edge_rule, macro_rule, required_degree
from macroelast.spaces import Family, GlobalSpace, assemble_space
from macroelast.spaces.operators import OperatorMatrix, operator_matrix

logger = logging.getLogger(__name__)

Boundary = Literal["traction", "displacement"]
RESIDUAL_TOLERANCE = 1e-10


class SingularSystemError(RuntimeError):
    """Raised when the saddle-point system cannot be factorized."""


# ---------------------------------------------------------------------------
# System and solution
# ---------------------------------------------------------------------------


@dataclass
class MixedSystem:
    """Float blocks of the discrete problem on one mesh."""

    mesh: Mesh
    k: int
    material: MaterialLaw
    sigma_space: GlobalSpace
    v_space: GlobalSpace
    rule: MacroRule
    divergence: OperatorMatrix
    compliance: np.ndarray
    v_mass: np.ndarray
    div_block: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.div_block = self.v_mass @ self.divergence.to_numpy()


@dataclass
class MixedSolution:
    sigma: np.ndarray
    u: np.ndarray
    multipliers: np.ndarray
    residual: float
    system: MixedSystem

    @property
    def divergence_moments(self) -> np.ndarray:
        """Displacement-moment coordinates of ``div σ_h``."""
        return self.system.divergence.to_numpy() @ self.sigma


def assemble_system(
    mesh: Mesh, k: int, material: MaterialLaw, quadrature_degree: int | None = None
) -> MixedSystem:
    degree = required_degree(k) if quadrature_degree is None else quadrature_degree
    check_degree(degree, k)
    sigma_space = assemble_space(mesh, Family.SIGMA, k)
    v_space = assemble_space(mesh, Family.V, k)
    rule = macro_rule(degree)
    div = operator_matrix("div", sigma_space, v_space)
    return MixedSystem(
        mesh,
        k,
        material,
        sigma_space,
        v_space,
        rule,
        div,
        compliance_matrix(sigma_space, material, rule),
        displacement_mass(v_space, rule),
    )


def _dense_solve(matrix: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, float]:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", LinAlgWarning)
            x = solve(matrix, rhs)
    except (LinAlgError, LinAlgWarning) as exc:
        raise SingularSystemError(f"saddle-point system of size {len(rhs)} is singular: {exc}") from exc
    scale = max(np.linalg.norm(rhs), np.linalg.norm(matrix, np.inf) * np.linalg.norm(x), 1e-300)
    residual = float(np.linalg.norm(matrix @ x - rhs) / scale)
    if residual > RESIDUAL_TOLERANCE:
        logger.warning("relative residual %.3e exceeds %.0e", residual, RESIDUAL_TOLERANCE)
    return x, residual


def _load_coordinates(system: MixedSystem, f: VectorFunction | np.ndarray | None) -> np.ndarray:
    if f is None:
        return np.zeros(system.v_space.dim)
    if isinstance(f, np.ndarray):
        if f.shape != (system.v_space.dim,):
            raise ValueError(f"body force needs {system.v_space.dim} coordinates, got shape {f.shape}")
        return f
    return load_moments(system.v_space, f, system.rule)


def solve_mixed(
    mesh: Mesh,
    k: int,
    material: MaterialLaw,
    f: VectorFunction | np.ndarray | None = None,
    boundary: Boundary = "traction",
    sigma_boundary: TensorFunction | np.ndarray | None = None,
    u_boundary: VectorFunction | None = None,
    quadrature_degree: int | None = None,
    system: MixedSystem | None = None,
) -> MixedSolution:
    """Solve the mixed problem for ``(σ_h, u_h)``.

    *f* is a callable ``f(x, y) -> (fx, fy)`` or the displacement-moment
    coordinates of the body force.  In traction mode *sigma_boundary* gives
    the boundary stress as a callable or as global stress coefficients; in
    displacement mode *u_boundary* gives ``u_D`` (zero when omitted).
    """
    if k < 1:
        raise ValueError(f"the mixed solver needs k >= 1, got {k}")
    if boundary not in ("traction", "displacement"):
        raise ValueError(f"unknown boundary mode '{boundary}'")
    system = system or assemble_system(mesh, k, material, quadrature_degree)
    moments = _load_coordinates(system, f)
    load = system.v_mass @ moments
    A, B = system.compliance, system.div_block
    n_sigma, n_u = A.shape[0], B.shape[0]

    if boundary == "displacement":
        g = np.zeros(n_sigma) if u_boundary is None else displacement_load(system.sigma_space, u_boundary, edge_rule(system.rule.degree))
        matrix = np.block([[A, B.T], [B, np.zeros((n_u, n_u))]])
        x, residual = _dense_solve(matrix, np.concatenate([g, load]))
        return MixedSolution(x[:n_sigma], x[n_sigma:], np.zeros(0), residual, system)
    fixed = boundary_dofs(system.sigma_space)
    free = np.setdiff1d(np.arange(n_sigma), fixed)
    sigma = np.zeros(n_sigma)
    if isinstance(sigma_boundary, np.ndarray):
        sigma[fixed] = sigma_boundary[fixed]
    elif sigma_boundary is not None:
        for g, value in boundary_stress_values(system.sigma_space, sigma_boundary, edge_rule(system.rule.degree)).items():
            sigma[g] = value

    constraints = orth(rigid_motion_constraints(system.v_space, system.rule).T).T
    n_c = constraints.shape[0]
    A_ff, B_f = A[np.ix_(free, free)], B[:, free]
    matrix = np.block(
        [
            [A_ff, B_f.T, np.zeros((len(free), n_c))],
            [B_f, np.zeros((n_u, n_u)), constraints.T],
            [np.zeros((n_c, len(free))), constraints, np.zeros((n_c, n_c))],
        ]
    )
    rhs = np.concatenate([-A[np.ix_(free, fixed)] @ sigma[fixed], load - B[:, fixed] @ sigma[fixed], np.zeros(n_c)])
    x, residual = _dense_solve(matrix, rhs)
    sigma[free] = x[: len(free)]
    u = x[len(free) : len(free) + n_u]
    multipliers = x[len(free) + n_u :]
    logger.info(
        "solved k=%d on %d triangles: %d stress, %d displacement unknowns, residual %.2e",
        k,
        len(mesh.triangles),
        n_sigma,
        n_u,
        residual,
    )
    return MixedSolution(sigma, u, multipliers, residual, system)


def discrete_patch_pair(system: MixedSystem, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Random discrete ``(σ*, u*)`` solving the traction problem and its load coordinates.

    ``u*`` has no rigid-motion component and ``σ*`` satisfies the first
    equation for every stress with vanishing boundary DoFs, so the traction
    solve with load ``D σ*`` and boundary values from ``σ*`` reproduces both.
    """
    A, B = system.compliance, system.div_block
    n_sigma = A.shape[0]
    fixed = boundary_dofs(system.sigma_space)
    free = np.setdiff1d(np.arange(n_sigma), fixed)
    constraints = orth(rigid_motion_constraints(system.v_space, system.rule).T).T
    u = rng.standard_normal(B.shape[0])
    u -= constraints.T @ (constraints @ u)
    sigma = np.zeros(n_sigma)
    sigma[fixed] = rng.standard_normal(len(fixed))
    sigma[free] = solve(A[np.ix_(free, free)], -A[np.ix_(free, fixed)] @ sigma[fixed] - B[:, free].T @ u, assume_a="pos")
    return sigma, u, system.divergence.to_numpy() @ sigma


# ---------------------------------------------------------------------------
# Errors
# ---------------------------------------------------------------------------


def _field_values(space: GlobalSpace, coeffs: np.ndarray, t: int, rule: MacroRule) -> np.ndarray:
    table = basis_table(space.element(t), rule)
    local = space.local_to_global(t)
    weights = np.array([d.sign * coeffs[d.global_index] for d in local])
    return np.einsum("a,aiq->iq", weights, table)


def stress_error(solution: MixedSolution, exact: TensorFunction) -> float:
    """``‖σ − σ_h‖_{L²}`` with the Frobenius norm."""
    system = solution.system
    total = 0.0
    for t in range(len(system.mesh.triangles)):
        values = _field_values(system.sigma_space, solution.sigma, t, system.rule)
        px, py = physical_points(system.sigma_space, t, system.rule)
        diff = np.stack([np.broadcast_to(np.asarray(c, dtype=float), px.shape) for c in exact(px, py)]) - values
        pointwise = diff[0] ** 2 + 2 * diff[1] ** 2 + diff[2] ** 2
        total += float(system.sigma_space.macro(t).area) * np.sum(system.rule.weights * pointwise)
    return float(np.sqrt(total))


def displacement_error(solution: MixedSolution, exact: VectorFunction, modulo_rigid: bool = False) -> float:
    """``‖u − u_h‖_{L²}``, optionally after removing the best rigid motion."""
    system = solution.system
    diffs, points, weights = [], [], []
    for t in range(len(system.mesh.triangles)):
        values = _field_values(system.v_space, solution.u, t, system.rule)
        px, py = physical_points(system.v_space, t, system.rule)
        diffs.append(np.stack([np.broadcast_to(np.asarray(c, dtype=float), px.shape) for c in exact(px, py)]) - values)
        points.append(np.stack([px, py]))
        weights.append(system.rule.weights * float(system.v_space.macro(t).area))
    diff, xy, w = np.concatenate(diffs, axis=1), np.concatenate(points, axis=1), np.concatenate(weights)
    if modulo_rigid:
        ones, zeros = np.ones_like(w), np.zeros_like(w)
        motions = np.stack([np.stack([ones, zeros]), np.stack([zeros, ones]), np.stack([-xy[1], xy[0]])])
        gram = np.einsum("riq,siq,q->rs", motions, motions, w)
        coeffs = np.linalg.solve(gram, np.einsum("riq,iq,q->r", motions, diff, w))
        diff = diff - np.einsum("r,riq->iq", coeffs, motions)
    return float(np.sqrt(np.sum(w * (diff[0] ** 2 + diff[1] ** 2))))


__all__ = [
    "MixedSolution",
    "MixedSystem",
    "SingularSystemError",
    "assemble_system",
    "discrete_patch_pair",
    "displacement_error",
    "solve_mixed",
    "stress_error",
]
