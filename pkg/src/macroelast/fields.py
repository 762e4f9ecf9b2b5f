"""Piecewise fields module – scalars, vectors and symmetric tensors on the barycentric split.

Every field carries one :class:`~macroelast.poly.BaryPoly` per subtriangle
``T_j`` and per component.  All pieces are written in the *macro*
barycentric coordinates, so the refined coordinates ``λᵢᴿ`` are affine
expressions and no change of variables is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from macroelast.geometry import EX, EY, MacroTriangle, Point2
from macroelast.poly import THIRD, BaryPoly, EdgePoly

Rational = Fraction | int
SymMatrix = tuple[Fraction, Fraction, Fraction]
Corner = int | Literal["c"]


def _unit(i: int) -> tuple[int, int, int]:
    return tuple(int(j == i) for j in range(3))  # type: ignore[return-value]


def corner_barycentric(i: Corner) -> tuple[Fraction, Fraction, Fraction]:
    if i == "c":
        return (THIRD, THIRD, THIRD)
    return tuple(Fraction(v) for v in _unit(i))  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PiecewiseScalar:
    """Scalar field with piece ``j`` living on ``T_j``."""

    macro: MacroTriangle
    pieces: tuple[BaryPoly, BaryPoly, BaryPoly]

    @classmethod
    def polynomial(cls, macro: MacroTriangle, p: BaryPoly) -> PiecewiseScalar:
        """The same polynomial on all three pieces."""
        return cls(macro, (p, p, p))

    @classmethod
    def zero(cls, macro: MacroTriangle) -> PiecewiseScalar:
        return cls.polynomial(macro, BaryPoly.zero())

    @classmethod
    def from_pieces(cls, macro: MacroTriangle, pieces: dict[int, BaryPoly]) -> PiecewiseScalar:
        """Field given on some pieces only; missing pieces are zero."""
        return cls(macro, tuple(pieces.get(j, BaryPoly.zero()) for j in range(3)))  # type: ignore[arg-type]

    # -- arithmetic -----------------------------------------------------------

    def _lift(self, other: object) -> tuple[BaryPoly, BaryPoly, BaryPoly] | None:
        if isinstance(other, PiecewiseScalar):
            return other.pieces
        if isinstance(other, BaryPoly):
            return (other, other, other)
        if isinstance(other, (int, Fraction)):
            c = BaryPoly.constant(other)
            return (c, c, c)
        return None

    def __add__(self, other: object) -> PiecewiseScalar:
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return PiecewiseScalar(self.macro, tuple(a + b for a, b in zip(self.pieces, rhs)))  # type: ignore[arg-type]

    __radd__ = __add__

    def __neg__(self) -> PiecewiseScalar:
        return PiecewiseScalar(self.macro, tuple(-p for p in self.pieces))  # type: ignore[arg-type]

    def __sub__(self, other: object) -> PiecewiseScalar:
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        return PiecewiseScalar(self.macro, tuple(a - b for a, b in zip(self.pieces, rhs)))  # type: ignore[arg-type]

    def __rsub__(self, other: object) -> PiecewiseScalar:
        return -(self - other)

    def __mul__(self, other: object) -> PiecewiseScalar:
        rhs = self._lift(other)
        if rhs is None:
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            return PiecewiseScalar(self.macro, tuple(p * other for p in self.pieces))  # type: ignore[arg-type]
        return PiecewiseScalar(self.macro, tuple(a * b for a, b in zip(self.pieces, rhs)))  # type: ignore[arg-type]

    __rmul__ = __mul__

    def __truediv__(self, other: Rational) -> PiecewiseScalar:
        return self * (1 / Fraction(other))

    def __pow__(self, exponent: int) -> PiecewiseScalar:
        return PiecewiseScalar(self.macro, tuple(p**exponent for p in self.pieces))  # type: ignore[arg-type]

    # -- inspection -----------------------------------------------------------

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.pieces if not p.is_zero()) if not self.is_zero() else 0

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.pieces)

    def equals(self, other: PiecewiseScalar | BaryPoly | Rational) -> bool:
        return (self - other).is_zero()

    def is_polynomial(self) -> bool:
        """True when all three pieces are the same polynomial."""
        first = self.pieces[0]
        return all(p == first for p in self.pieces[1:])

    def coefficient_vector(self, degree: int) -> list[Fraction]:
        """Piece coefficients concatenated in monomial order."""
        out: list[Fraction] = []
        for p in self.pieces:
            out.extend(p.coefficient_vector(degree))
        return out

    def value_at(self, corner: Corner, piece: int | None = None) -> Fraction:
        """Value at a macro vertex or the barycenter, read from *piece*."""
        if piece is None:
            piece = 0 if corner == "c" else (corner + 1) % 3
        return self.pieces[piece].evaluate(corner_barycentric(corner))

    # -- calculus -------------------------------------------------------------

    def derivative(self, direction: Point2) -> PiecewiseScalar:
        grads = self.macro.grad_lambda
        return PiecewiseScalar(self.macro, tuple(p.derivative(direction, grads) for p in self.pieces))  # type: ignore[arg-type]

    def gradient(self) -> PiecewiseVector:
        return PiecewiseVector(self.derivative(EX), self.derivative(EY))

    def integral_factor(self, weight: BaryPoly | None = None) -> Fraction:
        """``∫_T f·weight dx / |T|``, summed over the three pieces."""
        total = Fraction(0)
        for j, p in enumerate(self.pieces):
            integrand = p if weight is None else p * weight
            if not integrand.is_zero():
                total += integrand.piece_integral_factor(j)
        return total


# ---------------------------------------------------------------------------
# Vectors and symmetric tensors
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PiecewiseVector:
    x: PiecewiseScalar
    y: PiecewiseScalar

    @property
    def macro(self) -> MacroTriangle:
        return self.x.macro

    @property
    def components(self) -> tuple[PiecewiseScalar, PiecewiseScalar]:
        return (self.x, self.y)

    def __add__(self, other: PiecewiseVector) -> PiecewiseVector:
        return PiecewiseVector(self.x + other.x, self.y + other.y)

    def __sub__(self, other: PiecewiseVector) -> PiecewiseVector:
        return PiecewiseVector(self.x - other.x, self.y - other.y)

    def __neg__(self) -> PiecewiseVector:
        return PiecewiseVector(-self.x, -self.y)

    def __mul__(self, scale: Rational | PiecewiseScalar) -> PiecewiseVector:
        return PiecewiseVector(self.x * scale, self.y * scale)

    __rmul__ = __mul__

    def dot(self, v: Point2) -> PiecewiseScalar:
        return self.x * v.x + self.y * v.y

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()


@dataclass(frozen=True, eq=False)
class PiecewiseSymTensor:
    """Symmetric 2×2 field stored by its Cartesian components ``σ₁₁, σ₁₂, σ₂₂``."""

    xx: PiecewiseScalar
    xy: PiecewiseScalar
    yy: PiecewiseScalar

    @classmethod
    def scaled(cls, scale: PiecewiseScalar, matrix: SymMatrix) -> PiecewiseSymTensor:
        """``scale · matrix`` for a constant symmetric matrix."""
        return cls(*(scale * Fraction(m) for m in matrix))

    @classmethod
    def zero(cls, macro: MacroTriangle) -> PiecewiseSymTensor:
        z = PiecewiseScalar.zero(macro)
        return cls(z, z, z)

    @property
    def macro(self) -> MacroTriangle:
        return self.xx.macro

    @property
    def components(self) -> tuple[PiecewiseScalar, PiecewiseScalar, PiecewiseScalar]:
        return (self.xx, self.xy, self.yy)

    def __add__(self, other: PiecewiseSymTensor) -> PiecewiseSymTensor:
        return PiecewiseSymTensor(*(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: PiecewiseSymTensor) -> PiecewiseSymTensor:
        return PiecewiseSymTensor(*(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> PiecewiseSymTensor:
        return PiecewiseSymTensor(*(-a for a in self.components))

    def __mul__(self, scale: Rational | PiecewiseScalar) -> PiecewiseSymTensor:
        return PiecewiseSymTensor(*(a * scale for a in self.components))

    __rmul__ = __mul__

    def apply(self, n: Point2) -> PiecewiseVector:
        """Matrix-vector product ``σ n``."""
        return PiecewiseVector(self.xx * n.x + self.xy * n.y, self.xy * n.x + self.yy * n.y)

    def trace(self) -> PiecewiseScalar:
        return self.xx + self.yy

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def equals(self, other: PiecewiseSymTensor) -> bool:
        return (self - other).is_zero()

    def coefficient_vector(self, degree: int) -> list[Fraction]:
        out: list[Fraction] = []
        for c in self.components:
            out.extend(c.coefficient_vector(degree))
        return out


def sym_outer(a: Point2, b: Point2) -> SymMatrix:
    """Components of ``sym(a ⊗ b)``."""
    return (a.x * b.x, (a.x * b.y + a.y * b.x) / 2, a.y * b.y)


# ---------------------------------------------------------------------------
# Refined barycentric coordinates
# ---------------------------------------------------------------------------


def lambda_refined(macro: MacroTriangle, i: Corner) -> PiecewiseScalar:
    """Hat function ``λᵢᴿ`` of the refined mesh.

    On ``T_j`` it equals ``λᵢ − λ_j`` for a macro vertex and ``3λ_j`` for the
    barycenter.
    """
    if i == "c":
        return PiecewiseScalar(macro, tuple(BaryPoly.lam(j) * 3 for j in range(3)))  # type: ignore[arg-type]
    lam = BaryPoly.lam
    return PiecewiseScalar(
        macro,
        tuple(BaryPoly.zero(1) if j == i else lam(i) - lam(j) for j in range(3)),  # type: ignore[arg-type]
    )


# ---------------------------------------------------------------------------
# Differential operators
# ---------------------------------------------------------------------------


def airy(v: PiecewiseScalar) -> PiecewiseSymTensor:
    """Rotated Hessian ``[[∂yy v, −∂xy v], [−∂xy v, ∂xx v]]``."""
    vx, vy = v.derivative(EX), v.derivative(EY)
    return PiecewiseSymTensor(vy.derivative(EY), -vx.derivative(EY), vx.derivative(EX))


def divergence(sigma: PiecewiseSymTensor) -> PiecewiseVector:
    """Row-wise divergence."""
    return PiecewiseVector(
        sigma.xx.derivative(EX) + sigma.xy.derivative(EY),
        sigma.xy.derivative(EX) + sigma.yy.derivative(EY),
    )


# ---------------------------------------------------------------------------
# Interior-edge jumps
# ---------------------------------------------------------------------------

JumpKind = Literal["value", "gradient", "normal_trace"]


def interior_normal(macro: MacroTriangle, i: int) -> Point2:
    """Rotated edge vector of ``[vᵢ, v_c]``; points from ``T_{i+2}`` into ``T_{i+1}``."""
    return macro.t(i, "c").rotated_cw()


def _edge_jump(f: PiecewiseScalar, i: int) -> EdgePoly:
    start, end = corner_barycentric(i), corner_barycentric("c")
    left = f.pieces[(i + 1) % 3].trace(start, end)
    right = f.pieces[(i + 2) % 3].trace(start, end)
    return left - right


def jump(
    field: PiecewiseScalar | PiecewiseVector | PiecewiseSymTensor,
    i: int,
    what: JumpKind = "value",
) -> tuple[EdgePoly, ...]:
    """Trace difference across the interior edge ``[vᵢ, v_c]``.

    The edge is parametrized from ``vᵢ`` (μ₀) to ``v_c`` (μ₁) and the result
    is piece ``T_{i+1}`` minus piece ``T_{i+2}``, one entry per component.
    """
    if what == "value":
        comps = (field,) if isinstance(field, PiecewiseScalar) else field.components
    elif what == "gradient":
        if not isinstance(field, PiecewiseScalar):
            raise TypeError("gradient jumps are defined for scalar fields")
        comps = (field.derivative(EX), field.derivative(EY))
    elif what == "normal_trace":
        if not isinstance(field, PiecewiseSymTensor):
            raise TypeError("normal-trace jumps are defined for symmetric tensor fields")
        comps = field.apply(interior_normal(field.macro, i)).components
    else:
        raise ValueError(f"unknown jump kind '{what}'")
    return tuple(_edge_jump(c, i) for c in comps)


def is_continuous(field: PiecewiseScalar | PiecewiseVector | PiecewiseSymTensor, what: JumpKind = "value") -> bool:
    return all(q.is_zero() for i in range(3) for q in jump(field, i, what))


def is_c1(v: PiecewiseScalar) -> bool:
    return is_continuous(v, "value") and is_continuous(v, "gradient")


def rot_gradient_identity_check(macro: MacroTriangle) -> bool:
    """``∇⊥(λ₁ᴿ|_{T₂}) = 3t_{c,0}/(2|T|)`` and ``∇⊥(λ₂ᴿ|_{T₁}) = 3t_{0,c}/(2|T|)``."""
    grads = macro.grad_lambda
    scale = Fraction(3) / macro.area2
    first = (grads[1] - grads[2]).rotated_cw()
    second = (grads[2] - grads[1]).rotated_cw()
    return first == macro.t("c", 0) * scale and second == macro.t(0, "c") * scale
