"""C¹ element module – the potential spaces ``U_{k+2}(T)``, ``U₃(T)`` and ``U₂(T)``.

Shape functions are piecewise polynomials on the barycentric split built
from the enrichment potentials ``vᵢ`` (whose Airy stress is ``ψᵢᵏ``), the
edge potentials ``v_{i,i±1}`` and, for the two low orders, the potentials
``wᵢ`` and ``uᵢ``.  ``c_{i,j}`` below always means ``∇λᵢ · n_j`` with the
outward normal scaled by ``|e_j|``, so ``c_{i,i} < 0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Literal

from macroelast.elements.base import LocalElement, linear_combination
from macroelast.elements.dofs import (
    DEFAULT_ORIENTATION,
    DoFFunctional,
    ElementOrientation,
    Entity,
    UnisolvenceReport,
    bernstein_tests,
    edge_moment,
    macro_edge_trace,
    modified_edge_moment,
)
from macroelast.fields import PiecewiseScalar, lambda_refined
from macroelast.geometry import EX, EY, MacroTriangle, Point2
from macroelast.linalg import inverse, rank
from macroelast.poly import BaryPoly, dim_polynomials, monomials

logger = logging.getLogger(__name__)

Variant = Literal["standard", "modified"]


def dim_c1(k: int) -> int:
    """Dimension of ``U_{k+2}(T)``: 9 for k=0, 12 for k=1, ``(k+4)(k+3)/2 + 3`` above."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if k == 0:
        return 9
    if k == 1:
        return 12
    return dim_polynomials(k + 2) + 3


def _lam(i: int) -> BaryPoly:
    return BaryPoly.lam(i % 3)


def _poly(macro: MacroTriangle, p: BaryPoly) -> PiecewiseScalar:
    return PiecewiseScalar.polynomial(macro, p)


# ---------------------------------------------------------------------------
# Potentials
# ---------------------------------------------------------------------------


def build_v(macro: MacroTriangle, k: int, i: int) -> PiecewiseScalar:
    """Enrichment potential ``vᵢ = C_T/(k+1)·(λᵢᴿ)^{k+1}(λ_{i+2} − λ_{i+1})``; ``J(vᵢ) = ψᵢᵏ``."""
    if k < 1:
        raise ValueError(f"enrichment potentials need k >= 1, got {k}")
    scale = macro.airy_constant / (k + 1)
    return lambda_refined(macro, i % 3) ** (k + 1) * (_lam(i + 2) - _lam(i + 1)) * scale


def build_v_edge(macro: MacroTriangle, k: int, i: int, side: Literal[1, -1]) -> PiecewiseScalar:
    """Edge potential ``v_{i,i+side}``.

    ``C_T/(k+1)[(λᵢᴿ)^{k+1} − λᵢ^{k+1}](λ_{i−1} − λ_{i+1}) ∓ C_T λᵢᵏ λ_{i+1} λ_{i−1}``,
    with the minus sign for ``side = +1``.  Its trace on ``∂T`` and its vertex
    gradients vanish, and its normal derivative lives on ``e_{i+side}`` only.
    """
    if k < 1:
        raise ValueError(f"edge potentials need k >= 1, got {k}")
    if side not in (1, -1):
        raise ValueError(f"side must be +1 or -1, got {side}")
    c_t = macro.airy_constant
    lam_i = _lam(i)
    head = (lambda_refined(macro, i % 3) ** (k + 1) - lam_i ** (k + 1)) * (_lam(i - 1) - _lam(i + 1))
    tail = lam_i**k * _lam(i + 1) * _lam(i - 1) * c_t
    return head * (c_t / (k + 1)) - tail * side


def edge_pair_potential(macro: MacroTriangle, i: int) -> PiecewiseScalar:
    """``(v_{i+1,i} − v_{i−1,i}) / (4 C_T c_{i,i})`` at k=1.

    Its trace and vertex gradients vanish, so on every boundary edge its
    normal derivative is a multiple of the edge bubble, but not only on
    ``e_i``.  Summed with weights ``c_{i,i}`` the three give ``(3/2) b_T``.
    """
    i %= 3
    numerator = build_v_edge(macro, 1, (i + 1) % 3, -1) - build_v_edge(macro, 1, (i - 1) % 3, 1)
    return numerator / (4 * macro.airy_constant * macro.c(i, i))


@lru_cache(maxsize=None)
def _dual_potentials(macro: MacroTriangle) -> tuple[PiecewiseScalar, PiecewiseScalar, PiecewiseScalar]:
    raw = [edge_pair_potential(macro, m) for m in range(3)]
    gram = [[_modified_edge(macro, j)(raw[m]) for m in range(3)] for j in range(3)]
    dual = inverse(gram)
    zero = PiecewiseScalar.zero(macro)
    return tuple(linear_combination([dual[m][i] for m in range(3)], raw, zero) for i in range(3))  # type: ignore[return-value]


def build_w(macro: MacroTriangle, i: int) -> PiecewiseScalar:
    """Combination of the edge-pair potentials with ``∂_n wᵢ|_{e_j} = δ_ij b_{e_j}``.

    The weights invert the matrix of modified normal moments of the
    edge-pair potentials, so ``Σ c_{i,i} wᵢ = b_T``.
    """
    return _dual_potentials(macro)[i % 3]


def build_s(macro: MacroTriangle, i: int) -> PiecewiseScalar:
    """``sᵢ = λ_{i+1} λ_{i+2} (λ_{i+1} − λ_{i+2})``."""
    return _poly(macro, _lam(i + 1) * _lam(i + 2) * (_lam(i + 1) - _lam(i + 2)))


def build_u(macro: MacroTriangle, i: int) -> PiecewiseScalar:
    """``uᵢ = sᵢ − 3(c_{i+1,i} − c_{i+2,i})wᵢ − c_{i+1,i+1}w_{i+1} + c_{i+2,i+2}w_{i+2}``."""
    i %= 3
    j, m = (i + 1) % 3, (i + 2) % 3
    c = macro.c
    return (
        build_s(macro, i)
        - build_w(macro, i) * (3 * (c(j, i) - c(m, i)))
        - build_w(macro, j) * c(j, j)
        + build_w(macro, m) * c(m, m)
    )


# ---------------------------------------------------------------------------
# Shape functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class C1ShapeBasis:
    k: int
    functions: tuple[PiecewiseScalar, ...]
    groups: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.functions)

    def block(self, name: str) -> list[PiecewiseScalar]:
        return [f for f, g in zip(self.functions, self.groups) if g == name]


def _vertex_blocks(macro: MacroTriangle, k: int) -> list[tuple[str, PiecewiseScalar]]:
    out = [("U0_v", _poly(macro, _lam(v) ** (k + 2))) for v in range(3)]
    for v in range(3):
        for w in (v + 1, v - 1):
            out.append(("U1_v", _poly(macro, _lam(v) ** (k + 1) * _lam(w))))
    return out


def _labelled_shape_basis(macro: MacroTriangle, k: int) -> list[tuple[str, PiecewiseScalar]]:
    if k == 0:
        basis = [("U2", _poly(macro, BaryPoly.monomial(alpha))) for alpha in monomials(2)]
        return basis + [("U2", build_u(macro, i)) for i in range(3)]
    if k == 1:
        return _vertex_blocks(macro, 1) + [("w", build_w(macro, i)) for i in range(3)]

    b_t = _lam(0) * _lam(1) * _lam(2)
    out = _vertex_blocks(macro, k)
    for i in range(3):
        a, b = _lam(i + 1), _lam(i + 2)
        out += [("U0_e", _poly(macro, (a * b) ** 2 * a ** (k - 2 - p) * b**p)) for p in range(k - 1)]
    for i in range(3):
        a, b = _lam(i + 1), _lam(i + 2)
        out += [("U1_e", _poly(macro, a * b * b_t * a ** (k - 3 - p) * b**p)) for p in range(k - 2)]
        # potentials of the two endpoints whose normal derivative lives on e_i
        out.append(("U1_e", build_v_edge(macro, k, (i + 1) % 3, -1)))
        out.append(("U1_e", build_v_edge(macro, k, (i + 2) % 3, 1)))
    out += [("U0_T", _poly(macro, b_t**2 * BaryPoly.monomial(alpha))) for alpha in monomials(k - 4)]
    return out


def shape_basis_U(macro: MacroTriangle, k: int) -> C1ShapeBasis:
    labelled = _labelled_shape_basis(macro, k)
    return C1ShapeBasis(k, tuple(f for _, f in labelled), tuple(g for g, _ in labelled))


def hierarchical_u3_basis(macro: MacroTriangle) -> list[PiecewiseScalar]:
    """``ℙ₃(T) ⊕ span{v₀, v₁}`` at k=1."""
    cubic = [_poly(macro, BaryPoly.monomial(alpha)) for alpha in monomials(3)]
    return cubic + [build_v(macro, 1, 0), build_v(macro, 1, 1)]


# ---------------------------------------------------------------------------
# DoFs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class C1DoFSet:
    k: int
    variant: Variant
    functionals: tuple[DoFFunctional, ...]

    def __len__(self) -> int:
        return len(self.functionals)

    def apply(self, v: PiecewiseScalar) -> list[Fraction]:
        return [f(v) for f in self.functionals]


def _vertex_value(i: int) -> DoFFunctional:
    return DoFFunctional("value", Entity.VERTEX, i, 0, "D0_v", evaluate=lambda v: v.value_at(i))


def _vertex_derivative(i: int, slot: int, direction: Point2) -> DoFFunctional:
    return DoFFunctional(
        "derivative", Entity.VERTEX, i, slot, "D1_v", evaluate=lambda v: v.derivative(direction).value_at(i)
    )


def _edge_value_moment(i: int, p: int, k: int, orientation: ElementOrientation) -> DoFFunctional:
    test = bernstein_tests(k - 2)[p]

    def evaluate(v: PiecewiseScalar) -> Fraction:
        return edge_moment(macro_edge_trace(v.pieces[i], i, orientation), test)

    return DoFFunctional("edge_value", Entity.EDGE, i, p, "D0_e", evaluate=evaluate)


def _edge_normal_moment(macro: MacroTriangle, i: int, p: int, k: int, orientation: ElementOrientation) -> DoFFunctional:
    test = bernstein_tests(k - 1)[p]
    normal = macro.normal(i)

    def evaluate(v: PiecewiseScalar) -> Fraction:
        return edge_moment(macro_edge_trace(v.derivative(normal).pieces[i], i, orientation), test)

    offset = k - 1 if k >= 2 else 0
    return DoFFunctional("edge_normal", Entity.EDGE, i, offset + p, "D1_e", odd=True, evaluate=evaluate)


def _interior_moment(position: int, beta: tuple[int, int, int]) -> DoFFunctional:
    weight = BaryPoly.monomial(beta)
    return DoFFunctional(
        "interior", Entity.CELL, 0, position, "D_T", evaluate=lambda v: v.integral_factor(weight)
    )


def _modified_edge(macro: MacroTriangle, i: int) -> DoFFunctional:
    normal = macro.normal(i)

    def evaluate(v: PiecewiseScalar) -> Fraction:
        return modified_edge_moment(v.derivative(normal).pieces[i].restrict_edge(i))

    return DoFFunctional("modified_edge_normal", Entity.EDGE, i, 0, "D1_e", odd=True, evaluate=evaluate)


def c1_dofs(
    macro: MacroTriangle,
    k: int,
    variant: Variant = "standard",
    orientation: ElementOrientation = DEFAULT_ORIENTATION,
) -> C1DoFSet:
    """Vertex values, vertex gradients, edge value and normal-derivative moments, interior moments.

    The ``modified`` variant (k = 0, 1) replaces the gradients by the
    derivatives along ``t_{i,i+1}`` and ``t_{i,i−1}`` at each vertex and the
    normal-derivative moment by ``D_e(∂_n v)``.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    out = [_vertex_value(i) for i in range(3)]
    if variant == "modified":
        if k > 1:
            raise ValueError("the modified DoFs are defined for k = 0 and k = 1 only")
        for i in range(3):
            out.append(_vertex_derivative(i, 1, macro.t(i, (i + 1) % 3)))
            out.append(_vertex_derivative(i, 2, macro.t(i, (i - 1) % 3)))
        if k == 1:
            out += [_modified_edge(macro, i) for i in range(3)]
        return C1DoFSet(k, variant, tuple(out))
    if variant != "standard":
        raise ValueError(f"unknown DoF variant '{variant}'")

    for i in range(3):
        out.append(_vertex_derivative(i, 1, EX))
        out.append(_vertex_derivative(i, 2, EY))
    for i in range(3):
        out += [_edge_value_moment(i, p, k, orientation) for p in range(k - 1)]
    if k >= 1:
        for i in range(3):
            out += [_edge_normal_moment(macro, i, p, k, orientation) for p in range(k)]
    out += [_interior_moment(position, beta) for position, beta in enumerate(monomials(k - 4))]
    return C1DoFSet(k, variant, tuple(out))


# ---------------------------------------------------------------------------
# Element
# ---------------------------------------------------------------------------


class C1Element(LocalElement):
    family = "U"

    def __init__(
        self,
        macro: MacroTriangle,
        k: int,
        orientation: ElementOrientation = DEFAULT_ORIENTATION,
        variant: Variant = "standard",
    ) -> None:
        super().__init__(macro, k, orientation)
        self.variant = variant

    def _build_basis(self) -> list[tuple[str, PiecewiseScalar]]:
        return _labelled_shape_basis(self.macro, self.k)

    def _build_dofs(self) -> list[DoFFunctional]:
        return list(c1_dofs(self.macro, self.k, self.variant, self.orientation).functionals)

    def zero(self) -> PiecewiseScalar:
        return PiecewiseScalar.zero(self.macro)


def verify_unisolvence_c1(macro: MacroTriangle, k: int, variant: Variant = "standard") -> UnisolvenceReport:
    """DoF matrix with its block pattern (block lower triangular for k >= 1)."""
    return C1Element(macro, k, variant=variant).unisolvence()


def interpolate_c1_local(v: PiecewiseScalar, macro: MacroTriangle, k: int) -> list[Fraction]:
    return C1Element(macro, k).interpolate(v)


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------


def _rank(fields: list[PiecewiseScalar], degree: int) -> int:
    return rank([f.coefficient_vector(degree) for f in fields])


def replacement_identity_holds(macro: MacroTriangle, k: int, i: int) -> bool:
    """``ℙ_{k+2} + span{vᵢ} = ℙ_{k+2} + span{v_{i,i+1}, v_{i,i−1}}``."""
    poly = [_poly(macro, BaryPoly.monomial(alpha)) for alpha in monomials(k + 2)]
    v_i = build_v(macro, k, i)
    edge = [build_v_edge(macro, k, i, 1), build_v_edge(macro, k, i, -1)]
    d = k + 2
    return _rank(poly + [v_i], d) == _rank(poly + [v_i] + edge, d) == _rank(poly + edge, d)


def edge_enrichment_dependency(macro: MacroTriangle) -> list[PiecewiseScalar]:
    """``v_{0,2} − v_{0,1}``, ``v_{1,0} − v_{1,2}``, ``v_{2,1} − v_{2,0}`` at k=1 (all ``2C_T b_T``)."""
    out = []
    for i in range(3):
        out.append(build_v_edge(macro, 1, i, -1) - build_v_edge(macro, 1, i, 1))
    return out


def same_span(first: list[PiecewiseScalar], second: list[PiecewiseScalar], degree: int) -> bool:
    r = _rank(first, degree)
    return r == _rank(second, degree) == _rank(first + second, degree)
