"""Operators module – exact matrices of ``J`` and ``div`` and global nodal interpolation.

Rows of an operator matrix are indexed by target DoFs and stored sparsely.
A row is read off the owner of the target DoF and compared with the row
obtained from every other triangle holding that DoF; a mismatch means the
image of a global basis function is not single-valued and raises
:class:`~macroelast.spaces.ConformityError`.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Literal

import numpy as np

from macroelast.elements import LocalElement
from macroelast.fields import PiecewiseScalar, PiecewiseSymTensor, PiecewiseVector, airy, divergence
from macroelast.geometry import MacroTriangle
from macroelast.linalg import rank
from macroelast.poly import BaryPoly
from macroelast.spaces import ConformityError, Family, GlobalSpace

logger = logging.getLogger(__name__)

OperatorName = Literal["J", "div"]
CartesianTerms = Mapping[tuple[int, int], Fraction | int]


# ---------------------------------------------------------------------------
# Sparse exact matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OperatorMatrix:
    """Sparse rational matrix from ``source`` coefficients to ``target`` DoFs."""

    name: str
    rows: tuple[dict[int, Fraction], ...]
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def apply(self, x: Sequence[Fraction | int]) -> list[Fraction]:
        if len(x) != self.ncols:
            raise ValueError(f"{self.name} expects {self.ncols} coefficients, got {len(x)}")
        return [sum((v * x[j] for j, v in row.items()), Fraction(0)) for row in self.rows]

    def compose(self, inner: OperatorMatrix) -> OperatorMatrix:
        """``self ∘ inner``."""
        if inner.nrows != self.ncols:
            raise ValueError(f"cannot compose {self.name} {self.shape} with {inner.name} {inner.shape}")
        rows = []
        for row in self.rows:
            out: dict[int, Fraction] = {}
            for j, v in row.items():
                for c, w in inner.rows[j].items():
                    out[c] = out.get(c, Fraction(0)) + v * w
            rows.append({c: v for c, v in out.items() if v})
        return OperatorMatrix(f"{self.name}*{inner.name}", tuple(rows), inner.ncols)

    def transpose_rows(self) -> list[dict[int, Fraction]]:
        columns: list[dict[int, Fraction]] = [{} for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                columns[j][i] = v
        return columns

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        """Exact rank (fraction-free elimination over the shorter side)."""
        if self.nrows <= self.ncols:
            return rank(self.rows)
        return rank(self.transpose_rows())

    def to_numpy(self) -> np.ndarray:
        dense = np.zeros(self.shape)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                dense[i, j] = float(v)
        return dense


# ---------------------------------------------------------------------------
# Local operator tables
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _local_table(name: OperatorName, source: LocalElement, target: LocalElement) -> tuple[tuple[Fraction, ...], ...]:
    """``target.dofs[a](op(source.nodal_basis[b]))``."""
    op: Callable[[Any], Any] = airy if name == "J" else divergence
    images = [op(phi) for phi in source.nodal_basis]
    return tuple(tuple(dof(image) for image in images) for dof in target.dofs)


def _local_row(name: OperatorName, source: GlobalSpace, target: GlobalSpace, t: int, a: int) -> dict[int, Fraction]:
    table = _local_table(name, source.element(t), target.element(t))
    sign = target.local_to_global(t)[a].sign
    row: dict[int, Fraction] = {}
    for b, dof in enumerate(source.local_to_global(t)):
        value = table[a][b]
        if value:
            row[dof.global_index] = sign * dof.sign * value
    return row


_COMPATIBLE = {"J": (Family.U, Family.SIGMA), "div": (Family.SIGMA, Family.V)}


def operator_matrix(name: OperatorName, source: GlobalSpace, target: GlobalSpace) -> OperatorMatrix:
    """Exact global matrix of ``J : U_{k+2,h} → Σ_{k,h}`` or ``div : Σ_{k,h} → V_{k−1,h}``.

    Columns are global basis functions of *source*; row ``g`` holds the
    global DoF ``g`` of their images.  V coordinates are the moment DoFs,
    so the ``div`` matrix needs no mass-matrix solve.
    """
    if name not in _COMPATIBLE:
        raise ValueError(f"unknown operator '{name}' (expected J or div)")
    families = _COMPATIBLE[name]
    if (source.family, target.family) != families or source.k != target.k or source.mesh is not target.mesh:
        raise ValueError(
            f"{name} maps {families[0].value} to {families[1].value} of the same degree on the same mesh, "
            f"got {source.name} -> {target.name}"
        )

    rows: list[dict[int, Fraction]] = []
    for g, (t, a) in enumerate(target.owners):
        row = _local_row(name, source, target, t, a)
        for other_t, other_a in target.holders[g][1:]:
            if _local_row(name, source, target, other_t, other_a) != row:
                raise ConformityError(
                    f"{name}: DoF {g} of {target.name} differs between triangles {t} and {other_t}"
                )
        rows.append(row)
    logger.info("assembled %s matrix %dx%d", name, len(rows), source.dim)
    return OperatorMatrix(name, tuple(rows), source.dim)


# ---------------------------------------------------------------------------
# Global nodal interpolation
# ---------------------------------------------------------------------------


def interpolate_global(
    space: GlobalSpace,
    local_field: Callable[[MacroTriangle], Any],
    check: bool = True,
) -> list[Fraction]:
    """Global DoF values of a field given per triangle.

    ``local_field(macro)`` returns the field on the barycentric split of a
    mesh triangle.  With *check* the values of shared DoFs must agree between
    all triangles holding them.
    """
    values: list[Fraction | None] = [None] * space.dim
    for t in range(len(space.mesh.triangles)):
        local = space.element(t).dof_values(local_field(space.macro(t)))
        for value, dof in zip(local, space.local_to_global(t)):
            signed = dof.sign * value
            current = values[dof.global_index]
            if current is None:
                values[dof.global_index] = signed
            elif check and current != signed:
                raise ConformityError(
                    f"DoF {dof.global_index} of {space.name} is {current} on one triangle and {signed} on triangle {t}"
                )
    return [Fraction(0) if v is None else v for v in values]


def restrict(space: GlobalSpace, coeffs: Sequence[Fraction | int], t: int) -> Any:
    """Restriction of the global function with *coeffs* to triangle *t*."""
    element = space.element(t)
    total = element.zero()
    for phi, dof in zip(element.nodal_basis, space.local_to_global(t)):
        c = dof.sign * Fraction(coeffs[dof.global_index])
        if c:
            total = total + phi * c
    return total


# ---------------------------------------------------------------------------
# Global polynomials in Cartesian form
# ---------------------------------------------------------------------------


def cartesian_scalar(macro: MacroTriangle, terms: CartesianTerms) -> PiecewiseScalar:
    """``Σ c_ab x^a y^b`` on *macro* (the same polynomial on every piece)."""
    return PiecewiseScalar.polynomial(macro, BaryPoly.from_cartesian(terms, macro.parent.vertices))


def cartesian_vector(macro: MacroTriangle, terms: Sequence[CartesianTerms]) -> PiecewiseVector:
    x, y = (cartesian_scalar(macro, c) for c in terms)
    return PiecewiseVector(x, y)


def cartesian_tensor(macro: MacroTriangle, terms: Sequence[CartesianTerms]) -> PiecewiseSymTensor:
    """Symmetric tensor from its ``(xx, xy, yy)`` components."""
    xx, xy, yy = (cartesian_scalar(macro, c) for c in terms)
    return PiecewiseSymTensor(xx, xy, yy)


def random_cartesian(rng: np.random.Generator, degree: int, denominator: int = 5) -> dict[tuple[int, int], Fraction]:
    """Random polynomial of total degree ≤ *degree* with small rational coefficients."""
    terms = {}
    for total in range(degree + 1):
        for a in range(total + 1):
            numerator = int(rng.integers(-denominator, denominator + 1))
            if numerator:
                terms[(a, total - a)] = Fraction(numerator, denominator)
    # keep the top degree present so trials really use it
    terms.setdefault((degree, 0), Fraction(1))
    return terms


AFFINE_MODES: tuple[dict[tuple[int, int], int], ...] = ({(0, 0): 1}, {(1, 0): 1}, {(0, 1): 1})


def affine_coefficients(space: GlobalSpace) -> list[list[Fraction]]:
    """Coefficient vectors of ``1, x, y`` in ``U_{k+2,h}``."""
    if space.family is not Family.U:
        raise ValueError(f"affine modes live in U spaces, got {space.name}")
    return [interpolate_global(space, lambda m, c=mode: cartesian_scalar(m, c)) for mode in AFFINE_MODES]


__all__ = [
    "AFFINE_MODES",
    "OperatorMatrix",
    "affine_coefficients",
    "cartesian_scalar",
    "cartesian_tensor",
    "cartesian_vector",
    "interpolate_global",
    "operator_matrix",
    "random_cartesian",
    "restrict",
]
