"""Local element module – shape functions, DoFs and the exact dual (nodal) basis."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction
from functools import cached_property
from typing import Any, ClassVar

from macroelast.elements.dofs import (
    DEFAULT_ORIENTATION,
    DoFFunctional,
    ElementOrientation,
    UnisolvenceReport,
    dof_matrix,
)
from macroelast.geometry import MacroTriangle
from macroelast.linalg import SingularMatrixError, determinant, inverse, matvec, nullspace, rank

logger = logging.getLogger(__name__)


def linear_combination(coeffs: Sequence[Fraction], functions: Sequence[Any], zero: Any) -> Any:
    total = zero
    for c, f in zip(coeffs, functions):
        if c:
            total = total + f * c
    return total


class LocalElement:
    """Element on one macro triangle.

    Subclasses provide ``_build_basis`` (pairs of block label and field) and
    ``_build_dofs``.  The orientation fixes the vertex order used by edge
    functionals.
    """

    family: ClassVar[str] = ""
    #: DoF groups and basis groups pair up into a block lower triangular matrix
    block_triangular: ClassVar[bool] = True

    def __init__(self, macro: MacroTriangle, k: int, orientation: ElementOrientation = DEFAULT_ORIENTATION) -> None:
        self.macro = macro
        self.k = k
        self.orientation = orientation

    def __repr__(self) -> str:
        return f"{type(self).__name__}(k={self.k}, orientation={self.orientation.edge_order})"

    # -- to be provided by subclasses ----------------------------------------

    def _build_basis(self) -> list[tuple[str, Any]]:
        raise NotImplementedError

    def _build_dofs(self) -> list[DoFFunctional]:
        raise NotImplementedError

    def zero(self) -> Any:
        raise NotImplementedError

    # -- derived data -----------------------------------------------------------

    @cached_property
    def _labelled_basis(self) -> list[tuple[str, Any]]:
        basis = self._build_basis()
        logger.debug("built %d shape functions for %r", len(basis), self)
        return basis

    @property
    def basis(self) -> tuple[Any, ...]:
        return tuple(f for _, f in self._labelled_basis)

    @property
    def basis_groups(self) -> tuple[str, ...]:
        return tuple(g for g, _ in self._labelled_basis)

    @cached_property
    def dofs(self) -> tuple[DoFFunctional, ...]:
        return tuple(self._build_dofs())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def matrix(self) -> list[list[Fraction]]:
        return dof_matrix(self.dofs, self.basis)

    @cached_property
    def inverse(self) -> list[list[Fraction]]:
        if len(self.dofs) != self.dim:
            raise SingularMatrixError(f"{len(self.dofs)} DoFs for {self.dim} shape functions")
        return inverse(self.matrix)

    @cached_property
    def nodal_basis(self) -> tuple[Any, ...]:
        """Shape functions dual to the DoFs: ``N_a(φ_b) = δ_ab``."""
        columns = list(zip(*self.inverse))
        return tuple(linear_combination(col, self.basis, self.zero()) for col in columns)

    # -- interpolation --------------------------------------------------------

    def dof_values(self, f: Any) -> list[Fraction]:
        return [dof(f) for dof in self.dofs]

    def interpolate(self, f: Any) -> list[Fraction]:
        """Coefficients in :attr:`basis` of the element matching every DoF of *f*."""
        return matvec(self.inverse, self.dof_values(f))

    def combine(self, coeffs: Sequence[Fraction]) -> Any:
        return linear_combination(coeffs, self.basis, self.zero())

    def interpolant(self, f: Any) -> Any:
        return self.combine(self.interpolate(f))

    # -- verification ---------------------------------------------------------

    def unisolvence(self) -> UnisolvenceReport:
        """Exact determinant and the block pattern of the DoF matrix.

        For elements with :attr:`block_triangular` set the matrix must also be
        block lower triangular with invertible diagonal blocks.
        """
        matrix = self.matrix
        n = len(matrix)
        det = determinant(matrix) if n == self.dim else Fraction(0)
        report = UnisolvenceReport(matrix=matrix, determinant=det)
        if det == 0:
            kernel = nullspace(matrix, self.dim)
            report.kernel = kernel[0] if kernel else None

        if not self.block_triangular:
            return report
        dof_groups = list(dict.fromkeys(d.group for d in self.dofs))
        basis_groups = list(dict.fromkeys(self.basis_groups))
        if len(dof_groups) != len(basis_groups):
            return report
        rows = {g: [a for a, d in enumerate(self.dofs) if d.group == g] for g in dof_groups}
        cols = {g: [b for b, h in enumerate(self.basis_groups) if h == g] for g in basis_groups}
        for r, dg in enumerate(dof_groups):
            for c, bg in enumerate(basis_groups):
                block = [[matrix[a][b] for b in cols[bg]] for a in rows[dg]]
                if r == c:
                    square = len(rows[dg]) == len(cols[bg])
                    ok = square and rank(block) == len(block)
                    report.blocks[(dg, bg)] = "invertible" if ok else "singular"
                else:
                    nonzero = any(v for row in block for v in row)
                    report.blocks[(dg, bg)] = "nonzero" if nonzero else "zero"
                    ok = c < r or not nonzero
                if not ok and report.offending_block is None:
                    report.offending_block = (dg, bg)
        return report
