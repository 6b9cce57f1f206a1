"""Exact rational linear algebra.

Matrices are tuples of row tuples of :class:`fractions.Fraction`; vectors are
tuples of Fractions. Elimination is fraction-free (Bareiss): every row is first
scaled to integers, so intermediate values stay integral and bounded by minors
of the input.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    NoUniqueSolution,
    NotFullColumnRank,
    NotFullRowRank,
)

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[tuple[Fraction, ...], ...]


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        # floats are accepted only when they are integral; anything else would
        # silently import binary rounding error
        if not value.is_integer():
            raise TypeError(f"refusing inexact float {value!r}; pass a string or Fraction")
    return Fraction(value)


def vector(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vector(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionMismatch("ragged matrix rows")
    return out


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((Fraction(0),) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(A: Matrix, cols: int | None = None) -> Matrix:
    if not A:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*A))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt) for row in A)


def matvec(A: Matrix, x: Sequence[Fraction]) -> Vector:
    if A and len(A[0]) != len(x):
        raise DimensionMismatch(f"matrix has {len(A[0])} columns, vector has {len(x)} entries")
    return tuple(sum((a * v for a, v in zip(row, x)), Fraction(0)) for row in A)


def columns(A: Matrix, idx: Sequence[int]) -> Matrix:
    return tuple(tuple(row[j] for j in idx) for row in A)


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        scale = lcm(*(f.denominator for f in row)) if row else 1
        out.append([int(f * scale) for f in row])
    return out


def _bareiss(M: list[list[int]], ncols: int) -> list[int]:
    """Fraction-free row echelon form of an integer matrix, in place.

    Only the first ``ncols`` columns are used as pivot candidates; later
    columns (an augmented right-hand side) are carried along. Returns the
    pivot column of each nonzero echelon row.
    """
    rows = len(M)
    width = len(M[0]) if M else 0
    pivots: list[int] = []
    prev = 1
    k = 0
    for c in range(ncols):
        if k == rows:
            break
        r = next((i for i in range(k, rows) if M[i][c] != 0), None)
        if r is None:
            continue
        if r != k:
            M[k], M[r] = M[r], M[k]
        pk = M[k][c]
        rowk = M[k]
        for i in range(k + 1, rows):
            rowi = M[i]
            f = rowi[c]
            for j in range(c + 1, width):
                # exact by Sylvester's identity
                rowi[j] = (pk * rowi[j] - f * rowk[j]) // prev
            rowi[c] = 0
        # rows above k are untouched, but rows i>k in columns < c stay zero
        prev = pk
        pivots.append(c)
        k += 1
    return pivots


def rank(A: Matrix) -> int:
    rows, cols = shape(A)
    if rows == 0 or cols == 0:
        return 0
    return len(_bareiss(_integer_rows(A), cols))


def solve_unique(A: Matrix, b: Sequence[Fraction]) -> Vector:
    """Return the unique x with ``A x = b``.

    Raises :class:`NoUniqueSolution` with ``reason`` 'inconsistent' when no
    solution exists and 'underdetermined' when there are infinitely many.
    """
    rows, cols = shape(A)
    if len(b) != rows:
        raise DimensionMismatch(f"A has {rows} rows, b has {len(b)} entries")
    if rows == 0:
        if cols == 0:
            return ()
        raise NoUniqueSolution("underdetermined")
    M = _integer_rows([list(row) + [to_fraction(v)] for row, v in zip(A, b)])
    pivots = _bareiss(M, cols + 1)
    if pivots and pivots[-1] == cols:
        raise NoUniqueSolution("inconsistent")
    if len(pivots) < cols:
        raise NoUniqueSolution("underdetermined")
    x = [Fraction(0)] * cols
    # rank == cols forces pivots == [0, 1, ..., cols-1]
    for k in range(cols - 1, -1, -1):
        row = M[k]
        acc = Fraction(row[cols])
        for j in range(k + 1, cols):
            if row[j]:
                acc -= row[j] * x[j]
        x[k] = acc / row[k]
    return tuple(x)


def least_squares_full_col_rank(A: Matrix, b: Sequence[Fraction]) -> Vector:
    """Exact ``(A^T A)^{-1} A^T b`` for a full-column-rank ``A``."""
    rows, cols = shape(A)
    if len(b) != rows:
        raise DimensionMismatch(f"A has {rows} rows, b has {len(b)} entries")
    if rank(A) < cols:
        raise NotFullColumnRank(f"rank {rank(A)} < {cols} columns")
    At = transpose(A)
    return solve_unique(matmul(At, A), matvec(At, b))


def min_norm_solution(Phi: Matrix, b_eps: Sequence[Fraction]) -> Vector:
    """Exact ``Phi^T (Phi Phi^T)^{-1} b_eps`` for a full-row-rank ``Phi``."""
    rows, _ = shape(Phi)
    if len(b_eps) != rows:
        raise DimensionMismatch(f"Phi has {rows} rows, b has {len(b_eps)} entries")
    if rank(Phi) < rows:
        raise NotFullRowRank(f"rank {rank(Phi)} < {rows} rows")
    Pt = transpose(Phi)
    w = solve_unique(matmul(Phi, Pt), b_eps)
    return matvec(Pt, w)


def inf_norm(x: Sequence[Fraction]) -> Fraction:
    return max((abs(v) for v in x), default=Fraction(0))


def fmt(x: Fraction) -> str:
    """Serialize a rational as 'p' or 'p/q'."""
    return str(x)
