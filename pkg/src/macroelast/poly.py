"""Exact polynomial module – homogeneous forms in barycentric coordinates.

Polynomials on a triangle are stored as homogeneous forms in
``(λ₀, λ₁, λ₂)`` with :class:`fractions.Fraction` coefficients.  Because the
barycentric coordinates sum to one, a polynomial of lower degree is
*homogenized* by multiplying with powers of ``λ₀ + λ₁ + λ₂``; equality is
always tested after homogenizing both operands to a common degree.

Edge traces live in the same representation with two variables
``(μ₀, μ₁)`` (the barycentric coordinates of the two edge end points).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import TYPE_CHECKING, ClassVar, TypeVar

import numpy as np

if TYPE_CHECKING:
    from macroelast.geometry import Point2, Triangle

Rational = Fraction | int
Exponent = tuple[int, ...]

P = TypeVar("P", bound="HomogeneousPoly")


# ---------------------------------------------------------------------------
# Monomial enumeration
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def monomials(degree: int) -> tuple[tuple[int, int, int], ...]:
    """Exponent triples of total *degree* in descending lexicographic order."""
    if degree < 0:
        return ()
    return tuple(
        (a, b, degree - a - b)
        for a in range(degree, -1, -1)
        for b in range(degree - a, -1, -1)
    )


@lru_cache(maxsize=None)
def edge_monomials(degree: int) -> tuple[tuple[int, int], ...]:
    """Edge exponents ``(degree - p, p)`` for ``p = 0..degree``."""
    if degree < 0:
        return ()
    return tuple((degree - p, p) for p in range(degree + 1))


def dim_polynomials(degree: int) -> int:
    """Dimension of ℙ_degree on a triangle (zero for negative degree)."""
    return (degree + 1) * (degree + 2) // 2 if degree >= 0 else 0


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    return factorial(n)


# ---------------------------------------------------------------------------
# Dict kernels shared by both polynomial classes
# ---------------------------------------------------------------------------


def _add_into(out: dict[Exponent, Fraction], terms: Mapping, scale: Rational = 1) -> None:
    for alpha, c in terms.items():
        value = out.get(alpha, 0) + scale * c
        if value:
            out[alpha] = value
        else:
            out.pop(alpha, None)


def _mul_terms(left: Mapping, right: Mapping) -> dict[Exponent, Fraction]:
    out: dict[Exponent, Fraction] = {}
    for alpha, c in left.items():
        for beta, d in right.items():
            key = tuple(a + b for a, b in zip(alpha, beta))
            out[key] = out.get(key, 0) + c * d
    return {key: value for key, value in out.items() if value}


# ---------------------------------------------------------------------------
# Homogeneous polynomials
# ---------------------------------------------------------------------------


class HomogeneousPoly:
    """Homogeneous form with exact rational coefficients.

    Subclasses fix the number of variables.  Instances are treated as
    immutable values.
    """

    NVARS: ClassVar[int] = 0
    __slots__ = ("degree", "coeffs")

    degree: int
    coeffs: dict[Exponent, Fraction]

    def __init__(self, degree: int, coeffs: Mapping[Exponent, Rational] | None = None) -> None:
        if degree < 0:
            raise ValueError(f"degree must be nonnegative, got {degree}")
        clean: dict[Exponent, Fraction] = {}
        for alpha, c in (coeffs or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.NVARS or sum(alpha) != degree or min(alpha) < 0:
                raise ValueError(f"exponent {alpha} does not match degree {degree}")
            value = Fraction(c)
            if value:
                clean[alpha] = clean.get(alpha, 0) + value
        self.degree = degree
        self.coeffs = {alpha: c for alpha, c in clean.items() if c}

    @classmethod
    def _raw(cls: type[P], degree: int, coeffs: dict[Exponent, Fraction]) -> P:
        obj = cls.__new__(cls)
        obj.degree = degree
        obj.coeffs = coeffs
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls: type[P], degree: int = 0) -> P:
        return cls._raw(degree, {})

    @classmethod
    def constant(cls: type[P], value: Rational) -> P:
        value = Fraction(value)
        return cls._raw(0, {(0,) * cls.NVARS: value} if value else {})

    @classmethod
    def variable(cls: type[P], i: int) -> P:
        alpha = tuple(1 if j == i else 0 for j in range(cls.NVARS))
        return cls._raw(1, {alpha: Fraction(1)})

    @classmethod
    def monomial(cls: type[P], alpha: Sequence[int], coeff: Rational = 1) -> P:
        return cls(sum(alpha), {tuple(alpha): coeff})

    @classmethod
    def linear(cls: type[P], weights: Sequence[Rational]) -> P:
        """Linear form ``Σ weights[i]·x_i``."""
        return cls(
            1,
            {
                tuple(1 if j == i else 0 for j in range(cls.NVARS)): w
                for i, w in enumerate(weights)
            },
        )

    # -- canonical form -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def homogenize(self: P, degree: int) -> P:
        """Return the same function written as a form of *degree*."""
        if degree == self.degree:
            return self
        if not self.coeffs:
            return type(self)._raw(degree, {})
        if degree < self.degree:
            raise ValueError(f"cannot lower degree {self.degree} to {degree}")
        power = _sum_power(type(self), degree - self.degree)
        return type(self)._raw(degree, _mul_terms(self.coeffs, power.coeffs))

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self.homogenize(max(self.degree, sum(alpha))).coeffs.get(tuple(alpha), Fraction(0))

    def coefficient_vector(self, degree: int) -> list[Fraction]:
        """Coefficients in the monomial order of :func:`monomials` (or edge order)."""
        form = self.homogenize(degree)
        order = monomials(degree) if self.NVARS == 3 else edge_monomials(degree)
        return [form.coeffs.get(alpha, Fraction(0)) for alpha in order]

    # -- ring operations ----------------------------------------------------

    def _coerce(self: P, other: object) -> P | None:
        if isinstance(other, type(self)):
            return other
        if isinstance(other, (int, Fraction)):
            return type(self).constant(other)
        return None

    def __add__(self: P, other: object) -> P:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        degree = max(self.degree, rhs.degree)
        out = dict(self.homogenize(degree).coeffs)
        _add_into(out, rhs.homogenize(degree).coeffs)
        return type(self)._raw(degree, out)

    __radd__ = __add__

    def __neg__(self: P) -> P:
        return type(self)._raw(self.degree, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self: P, other: object) -> P:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self: P, other: object) -> P:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self: P, other: object) -> P:
        if isinstance(other, (int, Fraction)):
            scale = Fraction(other)
            if not scale:
                return type(self)._raw(self.degree, {})
            return type(self)._raw(self.degree, {a: scale * c for a, c in self.coeffs.items()})
        if isinstance(other, type(self)):
            return type(self)._raw(self.degree + other.degree, _mul_terms(self.coeffs, other.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self: P, other: Rational) -> P:
        return self * (1 / Fraction(other))

    def __pow__(self: P, exponent: int) -> P:
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = type(self).constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        degree = max(self.degree, rhs.degree)
        return self.homogenize(degree).coeffs == rhs.homogenize(degree).coeffs

    __hash__ = None  # type: ignore[assignment]

    # -- calculus -----------------------------------------------------------

    def partial(self: P, i: int) -> P:
        """Formal partial derivative with respect to the i-th variable."""
        if self.degree == 0:
            return type(self)._raw(0, {})
        out: dict[Exponent, Fraction] = {}
        for alpha, c in self.coeffs.items():
            if alpha[i]:
                beta = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1 :]
                out[beta] = out.get(beta, 0) + c * alpha[i]
        return type(self)._raw(self.degree - 1, {a: c for a, c in out.items() if c})

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        total = Fraction(0)
        for alpha, c in self.coeffs.items():
            term = c
            for x, a in zip(point, alpha):
                if a:
                    term *= Fraction(x) ** a
            total += term
        return total

    def substitute(self, forms: Sequence[Sequence[Rational]], target: type[P]) -> P:
        """Replace variable ``i`` by the linear form ``Σ_j forms[i][j]·y_j``."""
        out: dict[Exponent, Fraction] = {}
        keys = [tuple(Fraction(w) for w in form) for form in forms]
        for alpha, c in self.coeffs.items():
            terms: dict[Exponent, Fraction] = {(0,) * target.NVARS: c}
            for key, a in zip(keys, alpha):
                if a:
                    terms = _mul_terms(terms, _linear_power(target, key, a).coeffs)
            _add_into(out, terms)
        return target._raw(self.degree, out)

    # -- float evaluation ---------------------------------------------------

    def to_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Exponent matrix and float coefficients for vectorized evaluation."""
        if not self.coeffs:
            return np.zeros((1, self.NVARS), dtype=int), np.zeros(1)
        alphas = list(self.coeffs)
        return np.array(alphas, dtype=int), np.array([float(self.coeffs[a]) for a in alphas])

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at the rows of *points* (shape ``(n, NVARS)``) in floating point."""
        exponents, coeffs = self.to_arrays()
        powers = np.prod(points[:, None, :] ** exponents[None, :, :], axis=2)
        return powers @ coeffs

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{alpha}" for alpha, c in sorted(self.coeffs.items(), reverse=True))
        return f"{type(self).__name__}(degree={self.degree}, {body or '0'})"


@lru_cache(maxsize=None)
def _sum_power(cls: type[P], m: int) -> P:
    return cls.linear([1] * cls.NVARS) ** m


@lru_cache(maxsize=4096)
def _linear_power(cls: type[P], form: tuple[Fraction, ...], exponent: int) -> P:
    return cls.linear(form) ** exponent


# ---------------------------------------------------------------------------
# Barycentric and edge polynomials
# ---------------------------------------------------------------------------


class BaryPoly(HomogeneousPoly):
    """Polynomial in the barycentric coordinates ``(λ₀, λ₁, λ₂)`` of a triangle."""

    NVARS = 3
    __slots__ = ()

    @classmethod
    def lam(cls, i: int) -> BaryPoly:
        return cls.variable(i)

    @classmethod
    def from_cartesian(
        cls,
        terms: Mapping[tuple[int, int], Rational],
        vertices: Sequence[Point2],
    ) -> BaryPoly:
        """Rewrite ``Σ c_ab x^a y^b`` in the barycentric coordinates of *vertices*."""
        degree = max((a + b for (a, b), c in terms.items() if c), default=0)
        x = cls.linear([v.x for v in vertices])
        y = cls.linear([v.y for v in vertices])
        total = cls.zero(degree)
        for (a, b), c in terms.items():
            if c:
                total = total + (x**a) * (y**b) * Fraction(c)
        return total.homogenize(degree)

    def derivative(self, direction: Point2, grads: Sequence[Point2]) -> BaryPoly:
        """Directional derivative along *direction* given the gradients of λᵢ."""
        total = BaryPoly.zero(max(self.degree - 1, 0))
        for i, grad in enumerate(grads):
            weight = grad.dot(direction)
            if weight:
                total = total + self.partial(i) * weight
        return total

    def trace(self, start: Sequence[Rational], end: Sequence[Rational]) -> EdgePoly:
        """Restriction to the segment from barycentric point *start* to *end*."""
        return self.substitute([(start[i], end[i]) for i in range(3)], EdgePoly)

    def restrict_edge(self, i: int, order: tuple[int, int] | None = None) -> EdgePoly:
        """Trace on edge ``e_i`` (opposite vertex i); ``order`` gives the vertex for μ₀, μ₁."""
        first, second = order if order is not None else sorted(((i + 1) % 3, (i + 2) % 3))
        if i in (first, second) or first == second:
            raise ValueError(f"order {order} is not a vertex pair of edge {i}")
        return self.trace(_unit(first), _unit(second))

    def integral_factor(self) -> Fraction:
        """``∫_T p dx / |T|``."""
        d = self.degree
        total = Fraction(0)
        for (a, b, c), coeff in self.coeffs.items():
            total += coeff * 2 * _factorial(a) * _factorial(b) * _factorial(c)
        return total / _factorial(d + 2)

    def piece_integral_factor(self, j: int) -> Fraction:
        """``∫_{T_j} p dx / |T|`` for subtriangle ``T_j`` of the barycentric split."""
        return sum(
            (c * subtriangle_moment(j, alpha) for alpha, c in self.coeffs.items()),
            Fraction(0),
        )


class EdgePoly(HomogeneousPoly):
    """Polynomial in the edge coordinates ``(μ₀, μ₁)``."""

    NVARS = 2
    __slots__ = ()

    def integral_factor(self) -> Fraction:
        """Rational ``r`` with ``∫_e q ds = r·|e|``."""
        total = Fraction(0)
        for (a, b), c in self.coeffs.items():
            total += c * _factorial(a) * _factorial(b)
        return total / _factorial(self.degree + 1)

    def endpoint_values(self) -> tuple[Fraction, Fraction]:
        return self.evaluate((1, 0)), self.evaluate((0, 1))


def _unit(i: int) -> tuple[int, int, int]:
    return tuple(1 if j == i else 0 for j in range(3))  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# Integration
# ---------------------------------------------------------------------------

THIRD = Fraction(1, 3)


def subtriangle_barycentrics(j: int) -> tuple[tuple[Fraction, Fraction, Fraction], ...]:
    """Macro barycentric coordinates of the vertices of ``T_j`` = (v_{j+1}, v_{j+2}, v_c)."""
    first = tuple(Fraction(int(m == (j + 1) % 3)) for m in range(3))
    second = tuple(Fraction(int(m == (j + 2) % 3)) for m in range(3))
    return first, second, (THIRD, THIRD, THIRD)  # type: ignore[return-value]


@lru_cache(maxsize=None)
def subtriangle_moment(j: int, alpha: tuple[int, int, int]) -> Fraction:
    """``∫_{T_j} λ^α dx / |T|``; independent of the triangle's shape."""
    corners = subtriangle_barycentrics(j)
    forms = [tuple(corner[i] for corner in corners) for i in range(3)]
    local = BaryPoly.monomial(alpha).substitute(forms, BaryPoly)
    return local.integral_factor() / 3


def integrate_triangle(p: BaryPoly, triangle: Triangle) -> Fraction:
    """Exact ``∫_T p dx`` via ``∫ λ^α = 2|T| α!/(|α|+2)!``."""
    return p.integral_factor() * triangle.area


def integrate_edge(q: EdgePoly) -> Fraction:
    """Rational ``r`` with ``∫_e q ds = r·|e|``."""
    return q.integral_factor()


def directional_derivative(p: BaryPoly, v: Point2, triangle: Triangle) -> BaryPoly:
    return p.derivative(v, triangle.grad_lambda)


def restrict_edge(p: BaryPoly, i: int, order: tuple[int, int] | None = None) -> EdgePoly:
    return p.restrict_edge(i, order)


def bernstein_middle(q: EdgePoly) -> Fraction:
    """Coefficient of ``μ₀μ₁`` once *q* is written as a quadratic form."""
    if q.degree > 2 and not q.is_zero():
        raise ValueError(f"expected a trace of degree ≤ 2, got {q.degree}")
    return q.homogenize(2).coeffs.get((1, 1), Fraction(0))


def sum_polys(polys: Iterable[BaryPoly]) -> BaryPoly:
    total = BaryPoly.zero()
    for p in polys:
        total = total + p
    return total
