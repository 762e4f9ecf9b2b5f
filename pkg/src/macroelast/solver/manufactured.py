"""Manufactured solutions – displacement, stress and body force built symbolically.

For a displacement ``u`` the stress is ``σ = 2μ ε(u) + λ tr ε(u) I`` and the
body force is ``f = div σ``, so the pair solves the mixed problem with
``(div σ, v) = (f, v)``.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import sympy as sp

from macroelast.schema import ManufacturedCase, MaterialLaw

x, y = sp.symbols("x y", real=True)

DISPLACEMENTS: dict[ManufacturedCase, tuple[sp.Expr, sp.Expr]] = {
    ManufacturedCase.ZERO: (sp.Integer(0), sp.Integer(0)),
    ManufacturedCase.LINEAR: (x / 3 + y / 5, x / 7 - y / 2 + 1),
    ManufacturedCase.POLYNOMIAL: (x**2 * y**2 + x**3 - y**4 / 2, x**4 / 3 - x * y**3 + y**2),
    ManufacturedCase.TRIG: (
        sp.sin(sp.pi * x) * sp.sin(sp.pi * y),
        sp.cos(sp.pi * x) * sp.sin(2 * sp.pi * y) / 2,
    ),
}


def _vectorized(expressions: tuple[sp.Expr, ...]) -> Callable[..., tuple[np.ndarray, ...]]:
    compiled = sp.lambdify((x, y), list(expressions), "numpy")

    def evaluate(px: np.ndarray, py: np.ndarray) -> tuple[np.ndarray, ...]:
        px = np.asarray(px, dtype=float)
        return tuple(np.broadcast_to(np.asarray(v, dtype=float), px.shape) for v in compiled(px, py))

    return evaluate


@dataclass(frozen=True)
class ManufacturedSolution:
    case: ManufacturedCase
    displacement_expr: tuple[sp.Expr, sp.Expr]
    stress_expr: tuple[sp.Expr, sp.Expr, sp.Expr]
    force_expr: tuple[sp.Expr, sp.Expr]

    @property
    def displacement(self) -> Callable[..., tuple[np.ndarray, ...]]:
        return _vectorized(self.displacement_expr)

    @property
    def stress(self) -> Callable[..., tuple[np.ndarray, ...]]:
        return _vectorized(self.stress_expr)

    @property
    def body_force(self) -> Callable[..., tuple[np.ndarray, ...]]:
        return _vectorized(self.force_expr)

    @property
    def stress_degree(self) -> int | None:
        """Polynomial degree of the stress, or None when it is not a polynomial."""
        degrees = []
        for expr in self.stress_expr:
            if not expr.is_polynomial(x, y):
                return None
            degrees.append(sp.Poly(expr, x, y).total_degree() if expr != 0 else 0)
        return max(degrees)


def manufactured(case: ManufacturedCase | str, material: MaterialLaw) -> ManufacturedSolution:
    """Symbolic solution for one of the built-in cases (not ``patch``)."""
    case = ManufacturedCase(case)
    if case not in DISPLACEMENTS:
        raise ValueError(f"case '{case.value}' has no closed-form displacement")
    ux, uy = DISPLACEMENTS[case]
    exx, eyy = sp.diff(ux, x), sp.diff(uy, y)
    exy = (sp.diff(ux, y) + sp.diff(uy, x)) / 2
    mu, lam = sp.nsimplify(material.mu), sp.nsimplify(material.lame_lambda)
    trace = exx + eyy
    sxx = sp.expand(2 * mu * exx + lam * trace)
    sxy = sp.expand(2 * mu * exy)
    syy = sp.expand(2 * mu * eyy + lam * trace)
    fx = sp.expand(sp.diff(sxx, x) + sp.diff(sxy, y))
    fy = sp.expand(sp.diff(sxy, x) + sp.diff(syy, y))
    return ManufacturedSolution(case, (ux, uy), (sxx, sxy, syy), (fx, fy))


__all__ = ["DISPLACEMENTS", "ManufacturedSolution", "manufactured"]
