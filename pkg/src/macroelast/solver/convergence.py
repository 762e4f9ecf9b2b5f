"""Convergence harness – errors of manufactured solutions under uniform refinement."""

from __future__ import annotations

import logging

import numpy as np
import pandas as pd

from macroelast.geometry.mesh import Mesh
from macroelast.schema import ConvergenceRow, ManufacturedCase, MaterialLaw
from macroelast.solver import Boundary, displacement_error, solve_mixed, stress_error
from macroelast.solver.manufactured import manufactured
from macroelast.solver.quadrature import check_degree, required_degree

logger = logging.getLogger(__name__)

COLUMNS = ["level", "h", "err_sigma_L2", "err_u_L2", "order_sigma", "order_u"]


def observed_orders(h: list[float], errors: list[float]) -> list[float | None]:
    """``log(e_{l-1}/e_l) / log(h_{l-1}/h_l)``; None on the first level or for vanishing errors."""
    orders: list[float | None] = [None]
    for level in range(1, len(errors)):
        previous, current = errors[level - 1], errors[level]
        if previous <= 0 or current <= 0:
            orders.append(None)
            continue
        orders.append(float(np.log(previous / current) / np.log(h[level - 1] / h[level])))
    return orders


def convergence_study(
    mesh: Mesh,
    levels: int,
    k: int,
    material: MaterialLaw,
    case: ManufacturedCase | str = ManufacturedCase.TRIG,
    boundary: Boundary = "traction",
    quadrature_degree: int | None = None,
) -> pd.DataFrame:
    """Errors on *mesh* and its uniform refinements, one row per level.

    Raises
    ------
    InsufficientQuadratureError
        If *quadrature_degree* is below ``2(k+3)``.
    """
    degree = required_degree(k) if quadrature_degree is None else quadrature_degree
    check_degree(degree, k)
    if levels < 1:
        raise ValueError(f"at least one level is needed, got {levels}")
    solution = manufactured(case, material)
    rows: list[ConvergenceRow] = []
    current = mesh
    h, err_sigma, err_u = [], [], []
    for level in range(levels):
        if level:
            current = current.refine_uniform()
        result = solve_mixed(
            current,
            k,
            material,
            f=solution.body_force,
            boundary=boundary,
            sigma_boundary=solution.stress,
            u_boundary=solution.displacement,
            quadrature_degree=degree,
        )
        h.append(current.h)
        err_sigma.append(stress_error(result, solution.stress))
        err_u.append(displacement_error(result, solution.displacement, modulo_rigid=boundary == "traction"))
        logger.info(
            "level %d: h=%.4g, %d triangles, stress error %.3e, displacement error %.3e",
            level,
            h[-1],
            len(current.triangles),
            err_sigma[-1],
            err_u[-1],
        )
    for level, (o_s, o_u) in enumerate(zip(observed_orders(h, err_sigma), observed_orders(h, err_u))):
        rows.append(ConvergenceRow(level=level, h=h[level], err_sigma_L2=err_sigma[level], err_u_L2=err_u[level], order_sigma=o_s, order_u=o_u))
    return pd.DataFrame([row.model_dump() for row in rows], columns=COLUMNS)


__all__ = ["COLUMNS", "convergence_study", "observed_orders"]
