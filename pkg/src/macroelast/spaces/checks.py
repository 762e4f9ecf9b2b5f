"""Global verification module – conformity, exactness and commuting diagrams.

Everything here is exact: traces are compared as rational polynomials and
ranks come from fraction-free elimination.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from macroelast.fields import PiecewiseScalar, PiecewiseSymTensor, airy, divergence
from macroelast.geometry import EX, EY, Point2
from macroelast.geometry.mesh import Mesh
from macroelast.linalg import is_solvable
from macroelast.poly import EdgePoly
from macroelast.spaces import Family, GlobalSpace, assemble_space
from macroelast.spaces.operators import (
    OperatorMatrix,
    affine_coefficients,
    cartesian_scalar,
    cartesian_tensor,
    interpolate_global,
    operator_matrix,
    random_cartesian,
)

logger = logging.getLogger(__name__)


class ExactnessPreconditionError(ValueError):
    """Raised when exactness is requested on a mesh that is not simply connected."""


# ---------------------------------------------------------------------------
# Traces across mesh edges
# ---------------------------------------------------------------------------


def _unit(i: int) -> tuple[int, int, int]:
    return tuple(int(j == i) for j in range(3))  # type: ignore[return-value]


def _edge_of(mesh: Mesh, t: int, edge: int) -> tuple[int, tuple[int, int, int], tuple[int, int, int]]:
    """Local index of *edge* in triangle *t* and the barycentric endpoints ``lo``, ``hi``."""
    tri = mesh.triangles[t]
    i = mesh.triangle_edges(t).index(edge)
    lo, hi = mesh.edges[edge]
    return i, _unit(tri.index(lo)), _unit(tri.index(hi))


def _scalar_traces(v: PiecewiseScalar, mesh: Mesh, t: int, edge: int) -> tuple[EdgePoly, ...]:
    i, start, end = _edge_of(mesh, t, edge)
    parts = (v, v.derivative(EX), v.derivative(EY))
    return tuple(p.pieces[i].trace(start, end) for p in parts)


def _traction_traces(sigma: PiecewiseSymTensor, normal: Point2, mesh: Mesh, t: int, edge: int) -> tuple[EdgePoly, ...]:
    i, start, end = _edge_of(mesh, t, edge)
    return tuple(c.pieces[i].trace(start, end) for c in sigma.apply(normal).components)


def _differs(first: tuple[EdgePoly, ...], second: tuple[EdgePoly, ...]) -> bool:
    return any(not (a - b).is_zero() for a, b in zip(first, second))


@dataclass
class ConformityVerdict:
    """Result of a global trace check; ``offending`` lists ``(edge, global DoF)`` pairs."""

    space: str
    edges_checked: int = 0
    functions_checked: int = 0
    offending: list[tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.offending


def _edge_basis(space: GlobalSpace, edge: int) -> dict[int, list[tuple[int, int, int]]]:
    """Global DoFs seen by the triangles of *edge* with their ``(t, a, sign)``."""
    edge_pair = space.mesh.edges[edge]
    seen: dict[int, list[tuple[int, int, int]]] = {}
    for t in space.mesh.edge_triangles[edge_pair]:
        for a, dof in enumerate(space.local_to_global(t)):
            seen.setdefault(dof.global_index, []).append((t, a, dof.sign))
    return seen


def _check_traces(space: GlobalSpace, traces, limit: int | None) -> ConformityVerdict:
    mesh = space.mesh
    verdict = ConformityVerdict(space.name)
    for edge in mesh.interior_edges:
        verdict.edges_checked += 1
        first_t, second_t = mesh.edge_triangles[mesh.edges[edge]]
        for g, holders in _edge_basis(space, edge).items():
            verdict.functions_checked += 1
            sides = {t: traces(space.element(t).nodal_basis[a] * s, t, edge) for t, a, s in holders}
            width = len(next(iter(sides.values())))
            missing = tuple(EdgePoly.zero() for _ in range(width))
            if _differs(sides.get(first_t, missing), sides.get(second_t, missing)):
                verdict.offending.append((edge, g))
                if limit is not None and len(verdict.offending) >= limit:
                    return verdict
    return verdict


def global_c1_check(space: GlobalSpace, limit: int | None = 10) -> ConformityVerdict:
    """Value and gradient traces of every global U basis function agree across interior edges."""
    if space.family is not Family.U:
        raise ValueError(f"C1 conformity is checked on U spaces, got {space.name}")
    mesh = space.mesh
    verdict = _check_traces(space, lambda v, t, e: _scalar_traces(v, mesh, t, e), limit)
    logger.info(
        "C1 check of %s: %d edges, %d functions, %d offending",
        space.name,
        verdict.edges_checked,
        verdict.functions_checked,
        len(verdict.offending),
    )
    return verdict


def global_normal_trace_check(space: GlobalSpace, limit: int | None = 10) -> ConformityVerdict:
    """``σn`` of every global Σ basis function agrees across interior edges."""
    if space.family is not Family.SIGMA:
        raise ValueError(f"normal traces are checked on Sigma spaces, got {space.name}")
    mesh = space.mesh

    def traces(sigma: PiecewiseSymTensor, t: int, e: int) -> tuple[EdgePoly, ...]:
        lo, hi = mesh.edges[e]
        normal = (mesh.vertices[hi] - mesh.vertices[lo]).rotated_cw()
        return _traction_traces(sigma, normal, mesh, t, e)

    return _check_traces(space, traces, limit)


# ---------------------------------------------------------------------------
# Exactness
# ---------------------------------------------------------------------------


@dataclass
class ExactnessReport:
    k: int
    dims: dict[str, int]
    ranks: dict[str, int]
    identities: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.identities.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.identities.items() if not ok]


@dataclass
class ComplexMatrices:
    u: GlobalSpace
    sigma: GlobalSpace
    v: GlobalSpace
    j: OperatorMatrix
    div: OperatorMatrix


def assemble_complex(mesh: Mesh, k: int) -> ComplexMatrices:
    """Spaces and exact operator matrices of ``U_{k+2,h} → Σ_{k,h} → V_{k−1,h}``."""
    u = assemble_space(mesh, Family.U, k)
    sigma = assemble_space(mesh, Family.SIGMA, k)
    v = assemble_space(mesh, Family.V, k)
    return ComplexMatrices(u, sigma, v, operator_matrix("J", u, sigma), operator_matrix("div", sigma, v))


def verify_exactness(mesh: Mesh, k: int) -> ExactnessReport:
    """Exact-rank certificate that ``ℙ₁ ↪ U_{k+2,h} → Σ_{k,h} → V_{k−1,h} → 0`` is exact.

    Raises
    ------
    ExactnessPreconditionError
        If the mesh is not simply connected.
    """
    if not mesh.is_simply_connected():
        raise ExactnessPreconditionError(
            f"exactness needs a simply connected mesh (Euler characteristic {mesh.euler_characteristic})"
        )
    if k < 2:
        raise ValueError(f"exactness is verified for k >= 2, got {k}")
    cx = assemble_complex(mesh, k)
    dims = {"U": cx.u.dim, "Sigma": cx.sigma.dim, "V": cx.v.dim}
    rank_j, rank_div = cx.j.rank(), cx.div.rank()
    affine = [cx.j.apply(c) for c in affine_coefficients(cx.u)]
    identities = {
        "J kills affine functions": all(not any(col) for col in affine),
        "rank J = dim U - 3": rank_j == dims["U"] - 3,
        "rank div = dim V": rank_div == dims["V"],
        "rank J + rank div = dim Sigma": rank_j + rank_div == dims["Sigma"],
        "div J = 0": cx.div.compose(cx.j).is_zero(),
        "alternating sum vanishes": dims["U"] - 3 - dims["Sigma"] + dims["V"] == 0,
    }
    report = ExactnessReport(k, dims, {"J": rank_j, "div": rank_div}, identities)
    logger.info("exactness k=%d: dims %s, ranks %s, failures %s", k, dims, report.ranks, report.failures)
    return report


def verify_surjectivity(div: OperatorMatrix, rng: np.random.Generator, trials: int = 20) -> bool:
    """Random rational members of ``V_{k−1,h}`` are divergences of members of ``Σ_{k,h}``."""
    for _ in range(trials):
        rhs = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10))) for _ in range(div.nrows)]
        if not is_solvable(div.rows, rhs, div.ncols):
            return False
    return True


# ---------------------------------------------------------------------------
# Commuting diagram
# ---------------------------------------------------------------------------


@dataclass
class CommutingReport:
    k: int
    trials: int
    mismatches: dict[str, list[tuple[int, int]]] = field(default_factory=lambda: {"div": [], "J": []})

    @property
    def passed(self) -> bool:
        return not any(self.mismatches.values())


def _first_mismatch(lhs: list[Fraction], rhs: list[Fraction]) -> int | None:
    return next((g for g, (a, b) in enumerate(zip(lhs, rhs)) if a != b), None)


def verify_commuting(
    mesh: Mesh,
    k: int,
    rng: np.random.Generator,
    trials: int = 20,
    degree: int | None = None,
    complex_: ComplexMatrices | None = None,
) -> CommutingReport:
    """Check ``div I τ = Q div τ`` and ``I J v = J I v`` for random global polynomials.

    ``τ`` has degree *degree* (default ``k + 2``) and ``v`` degree ``degree + 2``.
    """
    d = k + 2 if degree is None else degree
    if d < 0:
        raise ValueError(f"trial degree must be non-negative, got {d}")
    cx = complex_ or assemble_complex(mesh, k)
    report = CommutingReport(k, trials)
    for trial in range(trials):
        tau_terms = [random_cartesian(rng, d) for _ in range(3)]
        interpolated = interpolate_global(cx.sigma, lambda m: cartesian_tensor(m, tau_terms))
        lhs = cx.div.apply(interpolated)
        rhs = interpolate_global(cx.v, lambda m: divergence(cartesian_tensor(m, tau_terms)))
        bad = _first_mismatch(lhs, rhs)
        if bad is not None:
            report.mismatches["div"].append((trial, bad))

        v_terms = random_cartesian(rng, d + 2)
        lhs = interpolate_global(cx.sigma, lambda m: airy(cartesian_scalar(m, v_terms)))
        rhs = cx.j.apply(interpolate_global(cx.u, lambda m: cartesian_scalar(m, v_terms)))
        bad = _first_mismatch(lhs, rhs)
        if bad is not None:
            report.mismatches["J"].append((trial, bad))
    logger.info("commuting k=%d: %d trials, mismatches %s", k, trials, report.mismatches)
    return report


__all__ = [
    "CommutingReport",
    "ComplexMatrices",
    "ConformityVerdict",
    "ExactnessPreconditionError",
    "ExactnessReport",
    "assemble_complex",
    "global_c1_check",
    "global_normal_trace_check",
    "verify_commuting",
    "verify_exactness",
    "verify_surjectivity",
]
