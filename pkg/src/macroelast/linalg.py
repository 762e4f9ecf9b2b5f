"""Exact linear algebra module – ranks, determinants and solves over ℚ.

Ranks use fraction-free elimination on sparse integer rows (each row is
scaled to integers and kept primitive); determinants use Bareiss'
algorithm; solves and kernels use Gauss–Jordan on :class:`Fraction`
entries.  Nothing here ever rounds.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction
from math import gcd, lcm

Row = Sequence[Fraction | int] | Mapping[int, Fraction | int]
Matrix = list[list[Fraction]]


class SingularMatrixError(ArithmeticError):
    """Raised when a square system has no unique solution."""

    def __init__(self, message: str, kernel: list[Fraction] | None = None) -> None:
        super().__init__(message)
        self.kernel = kernel


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _items(row: Row):
    if isinstance(row, Mapping):
        return row.items()
    return enumerate(row)


def _integer_row(row: Row) -> dict[int, int]:
    entries = {j: Fraction(v) for j, v in _items(row) if v}
    if not entries:
        return {}
    scale = lcm(*(v.denominator for v in entries.values()))
    return _primitive({j: int(v * scale) for j, v in entries.items()})


def _primitive(row: dict[int, int]) -> dict[int, int]:
    if not row:
        return row
    g = gcd(*row.values())
    if g == 1:
        return row
    return {j: v // g for j, v in row.items()}


def as_matrix(rows: Sequence[Row], ncols: int | None = None) -> Matrix:
    """Dense :class:`Fraction` copy of *rows* (sparse rows need *ncols*)."""
    out: Matrix = []
    for row in rows:
        if isinstance(row, Mapping):
            if ncols is None:
                raise ValueError("ncols is required for sparse rows")
            dense = [Fraction(0)] * ncols
            for j, v in row.items():
                dense[j] = Fraction(v)
            out.append(dense)
        else:
            out.append([Fraction(v) for v in row])
    return out


# ---------------------------------------------------------------------------
# Rank and determinant
# ---------------------------------------------------------------------------


def rank(rows: Sequence[Row]) -> int:
    """Exact rank by incremental fraction-free row reduction."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        current = _integer_row(row)
        while current:
            col = min(current)
            pivot = pivots.get(col)
            if pivot is None:
                pivots[col] = current
                break
            a, b = pivot[col], current[col]
            reduced = {j: a * v for j, v in current.items()}
            for j, v in pivot.items():
                reduced[j] = reduced.get(j, 0) - b * v
            current = _primitive({j: v for j, v in reduced.items() if v})
    return len(pivots)


def determinant(rows: Sequence[Sequence[Fraction | int]]) -> Fraction:
    """Exact determinant via Bareiss elimination on an integer-scaled copy."""
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    m: list[list[int]] = []
    for row in rows:
        fr = [Fraction(v) for v in row]
        factor = lcm(*(v.denominator for v in fr))
        m.append([int(v * factor) for v in fr])
        scale *= factor
    sign = 1
    previous = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return Fraction(sign * m[n - 1][n - 1]) / scale


# ---------------------------------------------------------------------------
# Gauss–Jordan
# ---------------------------------------------------------------------------


def rref(rows: Sequence[Row], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = as_matrix(rows, ncols)
    if not m:
        return m, []
    width = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(width):
        if r == len(m):
            break
        swap = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if swap is None:
            continue
        m[r], m[swap] = m[swap], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def nullspace(rows: Sequence[Row], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel, one vector per free column."""
    m, pivots = rref(rows, ncols)
    width = len(m[0]) if m else (ncols or 0)
    free = [c for c in range(width) if c not in pivots]
    basis: list[list[Fraction]] = []
    for f in free:
        vec = [Fraction(0)] * width
        vec[f] = Fraction(1)
        for r, c in enumerate(pivots):
            vec[c] = -m[r][f]
        basis.append(vec)
    return basis


def solve(a: Sequence[Sequence[Fraction | int]], b: Sequence[Fraction | int]) -> list[Fraction]:
    """Unique solution of the square system ``a x = b``.

    Raises
    ------
    SingularMatrixError
        If *a* is singular; ``kernel`` holds a nonzero kernel vector.
    """
    n = len(a)
    augmented = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    m, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        kernel = nullspace(a)
        raise SingularMatrixError(
            f"singular {n}x{n} system (rank {sum(1 for p in pivots if p < n)})",
            kernel[0] if kernel else None,
        )
    return [m[i][n] for i in range(n)]


def inverse(a: Sequence[Sequence[Fraction | int]]) -> Matrix:
    """Exact inverse of a square matrix."""
    n = len(a)
    augmented = [
        [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(a)
    ]
    m, pivots = rref(augmented)
    if pivots[:n] != list(range(n)):
        kernel = nullspace(a)
        raise SingularMatrixError(
            f"cannot invert singular {n}x{n} matrix", kernel[0] if kernel else None
        )
    return [row[n:] for row in m]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    columns = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in columns] for row in a]


def matvec(a: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> list[Fraction]:
    return [sum((v * w for v, w in zip(row, x)), Fraction(0)) for row in a]


def is_solvable(rows: Sequence[Row], rhs: Sequence[Fraction | int], ncols: int) -> bool:
    """True when ``rows · x = rhs`` has a solution (rank test on the augmented system)."""
    augmented: list[dict[int, Fraction]] = []
    for row, value in zip(rows, rhs):
        entry = {j: Fraction(v) for j, v in _items(row) if v}
        if value:
            entry[ncols] = Fraction(value)
        augmented.append(entry)
    return rank(rows) == rank(augmented)
