"""Stress element module – the enriched symmetric element ``Σ_{k,ψ}(T;𝕊)``.

Shape functions are ``ℙ_k(T;𝕊)`` (monomials times the three Cartesian
symmetric units) followed by the divergence-free enrichments ``ψ₀, ψ₁, ψ₂``.
At k=1 the three enrichments are linearly dependent modulo ``ℙ₁(T;𝕊)``
(their sum is linear), and the element is the Johnson–Mercier space of all
piecewise linear symmetric fields with continuous ``σn`` on the split.
DoFs are edge moments of ``σn`` against ``ℙ_k(e;ℝ²)`` in the (t, n) frame of
the global edge and interior moments against ``ℙ_{k−2}(T;𝕊)``, or against
the constants at k=1.  Normals are the unnormalized rotated edge vectors,
which rescales every edge moment by a positive rational factor.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
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
)
from macroelast.fields import (
    PiecewiseScalar,
    PiecewiseSymTensor,
    SymMatrix,
    corner_barycentric,
    divergence,
    jump,
    sym_outer,
)
from macroelast.geometry import MacroTriangle
from macroelast.linalg import nullspace, rank
from macroelast.poly import BaryPoly, dim_polynomials, monomials, sum_polys

logger = logging.getLogger(__name__)

UNITS: tuple[SymMatrix, SymMatrix, SymMatrix] = (
    (Fraction(1), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(1)),
)

JOHNSON_MERCIER_DIM = 15


def dim_stress(k: int) -> int:
    """``dim Σ_{k,ψ}(T;𝕊) = 3(k+1)(k+2)/2 + 3`` for k >= 2; 15 for Johnson–Mercier at k=1."""
    if k == 1:
        return JOHNSON_MERCIER_DIM
    return 3 * dim_polynomials(k) + 3


def interior_weights(k: int) -> tuple[tuple[int, int, int], ...]:
    """Exponents of the interior test monomials: ``ℙ_{k−2}``, or the constant at k=1."""
    return monomials(0) if k == 1 else monomials(k - 2)


def _require_degree(k: int) -> None:
    if k < 1:
        raise ValueError(f"the stress element needs k >= 1, got {k}")


def _tensor(macro: MacroTriangle, pieces: dict[int, list[tuple[BaryPoly, SymMatrix]]]) -> PiecewiseSymTensor:
    """Assemble a tensor from ``piece -> [(scalar, constant matrix), ...]``."""
    comps = []
    for m in range(3):
        comps.append(
            PiecewiseScalar.from_pieces(
                macro, {j: sum_polys(p * matrix[m] for p, matrix in terms) for j, terms in pieces.items()}
            )
        )
    return PiecewiseSymTensor(*comps)


def polynomial_tensor(macro: MacroTriangle, p: BaryPoly, unit: SymMatrix) -> PiecewiseSymTensor:
    return PiecewiseSymTensor.scaled(PiecewiseScalar.polynomial(macro, p), unit)


# ---------------------------------------------------------------------------
# Enrichments and bubbles
# ---------------------------------------------------------------------------


def build_psi(macro: MacroTriangle, k: int, i: int) -> PiecewiseSymTensor:
    """Divergence-free enrichment ``ψᵢᵏ``, supported on ``T_{i+1} ∪ T_{i+2}``."""
    _require_degree(k)
    a, b, c = i % 3, (i + 1) % 3, (i + 2) % 3
    lam = BaryPoly.lam
    t_ca, t_cb, t_cc = macro.t("c", a), macro.t("c", b), macro.t("c", c)

    # λ_aᴿ on T_c and T_b
    ra_c, rb_c = lam(a) - lam(c), lam(b) - lam(c)
    ra_b, rc_b = lam(a) - lam(b), lam(c) - lam(b)
    return _tensor(
        macro,
        {
            c: [
                (ra_c**k * 2, sym_outer(t_ca, t_cb)),
                (ra_c ** (k - 1) * rb_c * (-k), sym_outer(t_cb, t_cb)),
            ],
            b: [
                (ra_b**k * (-2), sym_outer(t_ca, t_cc)),
                (ra_b ** (k - 1) * rc_b * k, sym_outer(t_cc, t_cc)),
            ],
        },
    )


def polynomial_stress_basis(macro: MacroTriangle, k: int) -> list[PiecewiseSymTensor]:
    return [polynomial_tensor(macro, BaryPoly.monomial(alpha), unit) for alpha in monomials(k) for unit in UNITS]


def _edge_bubble(macro: MacroTriangle, i: int, degree: int) -> list[BaryPoly]:
    """``b_{e_i} ℙ_degree(e_i)`` written with the endpoint coordinates."""
    lam = BaryPoly.lam
    a, b = (i + 1) % 3, (i + 2) % 3
    return [lam(a) * lam(b) * lam(a) ** (degree - p) * lam(b) ** p for p in range(degree + 1)] if degree >= 0 else []


def div_bubble_basis(
    macro: MacroTriangle, k: int, characterization: Literal["geometric", "hu_zhang"] = "geometric"
) -> list[PiecewiseSymTensor]:
    """Basis of the polynomial ``H₀(div)`` bubbles of degree k."""
    _require_degree(k)
    lam = BaryPoly.lam
    b_t = lam(0) * lam(1) * lam(2)
    out: list[PiecewiseSymTensor] = []
    if characterization == "geometric":
        for alpha in monomials(k - 3):
            for unit in UNITS:
                out.append(polynomial_tensor(macro, b_t * BaryPoly.monomial(alpha), unit))
        for i in range(3):
            tt = sym_outer(macro.edge_frames[i].tangent, macro.edge_frames[i].tangent)
            out.extend(polynomial_tensor(macro, p, tt) for p in _edge_bubble(macro, i, k - 2))
    elif characterization == "hu_zhang":
        for alpha in monomials(k - 2):
            for i in range(3):
                a, b = (i + 1) % 3, (i + 2) % 3
                tt = sym_outer(macro.edge_frames[i].tangent, macro.edge_frames[i].tangent)
                out.append(polynomial_tensor(macro, BaryPoly.monomial(alpha) * lam(a) * lam(b), tt))
    else:
        raise ValueError(f"unknown characterization '{characterization}'")
    return out


def normal_edge_bubbles(macro: MacroTriangle, k: int) -> list[PiecewiseSymTensor]:
    """``b_e ℙ_{k−2}(e; 𝒩^e(𝕊))`` on all three edges."""
    out = []
    for i in range(3):
        frame = macro.edge_frames[i]
        units = (sym_outer(frame.normal, frame.normal), sym_outer(frame.normal, frame.tangent))
        for p in _edge_bubble(macro, i, k - 2):
            out.extend(polynomial_tensor(macro, p, unit) for unit in units)
    return out


def span_rank(fields: list[PiecewiseSymTensor], degree: int) -> int:
    return rank([f.coefficient_vector(degree) for f in fields])


def composite_linear_stresses(macro: MacroTriangle) -> list[PiecewiseSymTensor]:
    """Basis of the piecewise linear symmetric fields with continuous ``σn`` across the interior edges."""
    candidates = [
        _tensor(macro, {j: [(BaryPoly.monomial(alpha), unit)]})
        for j in range(3)
        for alpha in monomials(1)
        for unit in UNITS
    ]
    columns = [
        [c for i in range(3) for q in jump(f, i, "normal_trace") for c in q.coefficient_vector(1)] for f in candidates
    ]
    kernel = nullspace([list(row) for row in zip(*columns)], len(candidates))
    return [linear_combination(vec, candidates, PiecewiseSymTensor.zero(macro)) for vec in kernel]


def _complement(
    base: list[PiecewiseSymTensor], candidates: list[PiecewiseSymTensor], degree: int
) -> list[PiecewiseSymTensor]:
    """Candidates that raise the rank of *base*, taken greedily in order."""
    chosen: list[PiecewiseSymTensor] = []
    current = span_rank(base, degree)
    for f in candidates:
        if span_rank(base + chosen + [f], degree) > current:
            chosen.append(f)
            current += 1
    return chosen


# ---------------------------------------------------------------------------
# DoFs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StressShapeBasis:
    k: int
    functions: tuple[PiecewiseSymTensor, ...]

    def __len__(self) -> int:
        return len(self.functions)


@dataclass(frozen=True)
class StressDoFSet:
    k: int
    functionals: tuple[DoFFunctional, ...]

    def __len__(self) -> int:
        return len(self.functionals)

    def apply(self, sigma: PiecewiseSymTensor) -> list[Fraction]:
        return [f(sigma) for f in self.functionals]


def _edge_functional(
    macro: MacroTriangle, i: int, p: int, kind: str, k: int, orientation: ElementOrientation
) -> DoFFunctional:
    normal = macro.normal(i)
    direction = orientation.tangent(macro, i) if kind == "t" else normal
    test = bernstein_tests(k)[p]

    def evaluate(sigma: PiecewiseSymTensor) -> Fraction:
        traction = sigma.apply(normal).dot(direction)
        return edge_moment(macro_edge_trace(traction.pieces[i], i, orientation), test)

    return DoFFunctional(
        name=f"sigma_n{kind}",
        entity=Entity.EDGE,
        index=i,
        slot=2 * p + (0 if kind == "t" else 1),
        group="edge",
        odd=kind == "t",
        evaluate=evaluate,
    )


def _interior_functional(beta: tuple[int, int, int], position: int, comp: int) -> DoFFunctional:
    weight = BaryPoly.monomial(beta)

    def evaluate(sigma: PiecewiseSymTensor) -> Fraction:
        return sigma.components[comp].integral_factor(weight)

    return DoFFunctional(
        name="sigma_interior",
        entity=Entity.CELL,
        index=0,
        slot=3 * position + comp,
        group="interior",
        evaluate=evaluate,
    )


def stress_dofs(
    macro: MacroTriangle, k: int, orientation: ElementOrientation = DEFAULT_ORIENTATION
) -> StressDoFSet:
    """Edge moments of ``σn`` followed by interior moments."""
    _require_degree(k)
    functionals: list[DoFFunctional] = []
    for i in range(3):
        for p in range(k + 1):
            functionals.append(_edge_functional(macro, i, p, "t", k, orientation))
            functionals.append(_edge_functional(macro, i, p, "n", k, orientation))
    for position, beta in enumerate(interior_weights(k)):
        for comp in range(3):
            functionals.append(_interior_functional(beta, position, comp))
    return StressDoFSet(k, tuple(functionals))


# ---------------------------------------------------------------------------
# Element
# ---------------------------------------------------------------------------


class StressElement(LocalElement):
    family = "Sigma"
    block_triangular = False

    def __init__(self, macro: MacroTriangle, k: int, orientation: ElementOrientation = DEFAULT_ORIENTATION) -> None:
        _require_degree(k)
        super().__init__(macro, k, orientation)

    def _build_basis(self) -> list[tuple[str, PiecewiseSymTensor]]:
        polynomial = polynomial_stress_basis(self.macro, self.k)
        psi = [build_psi(self.macro, self.k, i) for i in range(3)]
        basis = [("polynomial", f) for f in polynomial]
        if self.k >= 2:
            return basis + [("enrichment", f) for f in psi]
        # ψ₂ is dependent at k=1; composite fields fill up the Johnson–Mercier space
        enrichment = _complement(polynomial, psi, 1)
        composite = _complement(polynomial + enrichment, composite_linear_stresses(self.macro), 1)
        return basis + [("enrichment", f) for f in enrichment] + [("composite", f) for f in composite]

    def _build_dofs(self) -> list[DoFFunctional]:
        return list(stress_dofs(self.macro, self.k, self.orientation).functionals)

    def zero(self) -> PiecewiseSymTensor:
        return PiecewiseSymTensor.zero(self.macro)

    @property
    def shape_basis(self) -> StressShapeBasis:
        return StressShapeBasis(self.k, self.basis)


def shape_basis_stress(macro: MacroTriangle, k: int) -> StressShapeBasis:
    return StressElement(macro, k).shape_basis


def verify_unisolvence_stress(macro: MacroTriangle, k: int) -> UnisolvenceReport:
    """Exact DoF matrix of ``Σ_{k,ψ}(T;𝕊)``; singular reports carry a kernel vector."""
    return StressElement(macro, k).unisolvence()


def interpolate_stress_local(tau: PiecewiseSymTensor, macro: MacroTriangle, k: int) -> list[Fraction]:
    """Coefficients in the shape basis of the unique element sharing every DoF with *tau*."""
    return StressElement(macro, k).interpolate(tau)


def is_direct_enrichment(macro: MacroTriangle, k: int) -> bool:
    """``ℙ_k(T;𝕊)`` and ``span{ψ₀, ψ₁, ψ₂}`` intersect trivially.

    False at k=1, where ``ψ₀ + ψ₁ + ψ₂`` is itself linear.
    """
    fields = polynomial_stress_basis(macro, k) + [build_psi(macro, k, i) for i in range(3)]
    return span_rank(fields, k) == len(fields)


def decomposition_dimensions(macro: MacroTriangle, k: int) -> dict[str, int]:
    """Dimensions of the bubble, lowest-order and normal-edge parts of ``Σ_{k,ψ}``.

    ``total`` is the rank of their union and ``span`` the rank of the union
    with the shape basis; all three agree with ``dim`` when the
    decomposition is direct and exhaustive.
    """
    bubbles = div_bubble_basis(macro, k)
    lowest = polynomial_stress_basis(macro, 1) + [build_psi(macro, k, i) for i in range(3)]
    normals = normal_edge_bubbles(macro, k)
    union = bubbles + lowest + normals
    shape = list(StressElement(macro, k).basis)
    return {
        "bubble": span_rank(bubbles, k) if bubbles else 0,
        "lowest_order": span_rank(lowest, k),
        "normal_edge": span_rank(normals, k) if normals else 0,
        "total": span_rank(union, k),
        "span": span_rank(union + shape, k),
        "dim": dim_stress(k),
    }


def vertex_values(sigma: PiecewiseSymTensor) -> list[Fraction]:
    """Components at the three macro vertices, read from both adjacent pieces."""
    values = []
    for i in range(3):
        point = corner_barycentric(i)
        for piece in ((i + 1) % 3, (i + 2) % 3):
            values.extend(c.pieces[piece].evaluate(point) for c in sigma.components)
    return values


def edge_dof_kernel(macro: MacroTriangle, k: int) -> list[PiecewiseSymTensor]:
    """Members of ``Σ_{k,ψ}(T;𝕊)`` whose edge DoFs all vanish."""
    element = StressElement(macro, k)
    edge_rows = [row for row, dof in zip(element.matrix, element.dofs) if dof.entity is Entity.EDGE]
    kernel = nullspace(edge_rows, element.dim)
    return [linear_combination(vec, element.basis, element.zero()) for vec in kernel]


def divergence_is_polynomial(sigma: PiecewiseSymTensor) -> bool:
    """All pieces of ``div σ`` are the same polynomial."""
    div = divergence(sigma)
    return div.x.is_polynomial() and div.y.is_polynomial()

