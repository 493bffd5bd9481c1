"""Exact linear algebra over the rationals.

Matrices are immutable tuples of tuples of ``Fraction``.  Everything here
is small and dense; determinism matters more than speed because pivot
choices are part of the public contract of the callers (kernel bases and
basis completions must be reproducible byte for byte).

A matrix with zero rows carries no column count, so routines that need
one take it explicitly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def matrix(rows: Iterable[Iterable[object]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def vector(entries: Iterable[object]) -> Vector:
    return tuple(Fraction(x) for x in entries)


def zeros(n_rows: int, n_cols: int) -> Matrix:
    return tuple((_ZERO,) * n_cols for _ in range(n_rows))


def identity(n: int) -> Matrix:
    return tuple(
        tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n)
    )


def unit_vector(n: int, i: int) -> Vector:
    """Standard basis vector e_i (0-based) of length n."""
    return tuple(_ONE if j == i else _ZERO for j in range(n))


def transpose(a: Matrix, n_cols: int) -> Matrix:
    return tuple(tuple(row[j] for row in a) for j in range(n_cols))


def matmul(a: Matrix, b: Matrix, shape: Optional[tuple[int, int, int]] = None) -> Matrix:
    """Product a @ b.  ``shape=(r, k, c)`` is required when k or c is 0."""
    if shape is None:
        r = len(a)
        k = len(b)
        c = len(b[0]) if b else 0
    else:
        r, k, c = shape
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), _ZERO) for j in range(c))
        for i in range(r)
    )


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((row[j] * v[j] for j in range(len(v))), _ZERO) for row in a)


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b):
        raise ValueError("row counts differ")
    return tuple(ra + rb for ra, rb in zip(a, b))


def vstack(a: Matrix, b: Matrix) -> Matrix:
    return a + b


def submatrix(a: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    return tuple(tuple(a[i][j] for j in cols) for i in rows)


def rref(a: Matrix, n_cols: Optional[int] = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with leftmost-pivot rule.

    Returns (rref_matrix, pivot_columns).
    """
    rows = [list(r) for r in a]
    if n_cols is None:
        n_cols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def det(a: Matrix) -> Fraction:
    """Determinant of a square matrix; the 0x0 determinant is 1."""
    n = len(a)
    rows = [list(r) for r in a]
    sign = _ONE
    out = _ONE
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return _ZERO
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            sign = -sign
        pv = rows[c][c]
        out *= pv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return sign * out


def kernel_basis(a: Matrix, n_cols: int) -> tuple[Vector, ...]:
    """Canonical kernel basis: one vector per free column, ascending.

    The free coordinate is set to 1 and the pivot coordinates are solved
    from the reduced echelon form, so the result is deterministic.
    """
    red, pivots = rref(a, n_cols)
    pivot_set = set(pivots)
    free = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [_ZERO] * n_cols
        v[fc] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return tuple(basis)


def solve_unique(a: Matrix, b: Matrix, n_cols: int) -> Optional[Matrix]:
    """Solve a @ x = b when ``a`` has full column rank.

    Returns the unique solution (n_cols x width of b), or None when the
    system is inconsistent.  Raises ValueError if columns are dependent.
    """
    width = len(b[0]) if b else 0
    red, pivots = rref(hstack(a, b) if a else b, n_cols + width)
    col_pivots = [p for p in pivots if p < n_cols]
    if any(p >= n_cols for p in pivots):
        return None
    if len(col_pivots) != n_cols:
        raise ValueError("matrix does not have full column rank")
    x = [[_ZERO] * width for _ in range(n_cols)]
    for r, pc in enumerate(col_pivots):
        for j in range(width):
            x[pc][j] = red[r][n_cols + j]
    return tuple(tuple(row) for row in x)


def inverse(a: Matrix) -> Optional[Matrix]:
    n = len(a)
    red, pivots = rref(hstack(a, identity(n)) if n else (), 2 * n)
    if len(pivots) != n or any(p >= n for p in pivots):
        return None
    return tuple(tuple(red[i][n:]) for i in range(n))


def independent_columns(a: Matrix, n_cols: int, order: str = "left") -> tuple[int, ...]:
    """Greedy maximal independent column set in the given scan order.

    ``order`` is "left" (scan ascending) or "right" (descending); the
    result is returned ascending either way.
    """
    if order not in ("left", "right"):
        raise ValueError("order must be 'left' or 'right'")
    scan = range(n_cols) if order == "left" else range(n_cols - 1, -1, -1)
    chosen: list[int] = []
    n_rows = len(a)
    echelon: list[list[Fraction]] = []
    pivot_pos: list[int] = []
    for c in scan:
        col = [a[i][c] for i in range(n_rows)]
        for row, p in zip(echelon, pivot_pos):
            if col[p] != 0:
                f = col[p] / row[p]
                col = [x - f * y for x, y in zip(col, row)]
        lead = next((i for i, x in enumerate(col) if x != 0), None)
        if lead is not None:
            echelon.append(col)
            pivot_pos.append(lead)
            chosen.append(c)
    return tuple(sorted(chosen))
