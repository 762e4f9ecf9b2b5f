"""Discrete inf-sup constant of ``div : Σ_{k,h} → V_{k−1,h}`` in the ``(H(div), L²)`` pair.

With ``G = M_Σ + Dᵀ M_V D`` and ``B = M_V D`` the constant is
``β = sqrt(λ_min)`` for the generalized eigenproblem ``B G⁻¹ Bᵀ x = λ M_V x``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable

import numpy as np
from scipy.linalg import cho_factor, cho_solve, eigh

from macroelast.geometry.mesh import Mesh
from macroelast.solver.assembly import displacement_mass, stress_mass
from macroelast.solver.quadrature import macro_rule, required_degree
from macroelast.spaces import Family, assemble_space
from macroelast.spaces.operators import operator_matrix

logger = logging.getLogger(__name__)

CONDITION_WARNING = 1e12


def inf_sup_constant(mesh: Mesh, k: int) -> float:
    """Smallest generalized singular value of the divergence matrix on *mesh*."""
    sigma = assemble_space(mesh, Family.SIGMA, k)
    v = assemble_space(mesh, Family.V, k)
    rule = macro_rule(required_degree(k))
    d = operator_matrix("div", sigma, v).to_numpy()
    m_v = displacement_mass(v, rule)
    gram = stress_mass(sigma, rule) + d.T @ m_v @ d
    condition = np.linalg.cond(gram)
    if condition > CONDITION_WARNING:
        logger.warning("H(div) Gram matrix is ill-conditioned (cond %.2e)", condition)
    b = m_v @ d
    schur = b @ cho_solve(cho_factor(gram), b.T)
    smallest = eigh(schur, m_v, eigvals_only=True, subset_by_index=[0, 0])[0]
    beta = float(np.sqrt(max(smallest, 0.0)))
    logger.info("inf-sup k=%d on %d triangles: %.6f", k, len(mesh.triangles), beta)
    return beta


def inf_sup_estimate(meshes: Iterable[Mesh], k: int) -> list[float]:
    """Inf-sup constants on a sequence of meshes."""
    return [inf_sup_constant(mesh, k) for mesh in meshes]


__all__ = ["inf_sup_constant", "inf_sup_estimate"]
