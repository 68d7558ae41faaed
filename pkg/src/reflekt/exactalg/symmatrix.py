"""Symmetric matrices over quadratic fields and certified inertia.

The signature routine performs simultaneous row/column pivoting (congruence
diagonalization), so the inertia it reports comes with a replayable pivot
trace: re-evaluating the exact signs of the recorded pivots reproduces the
counts.  Zero-diagonal blocks are handled by the standard hyperbolic-pair
transformation, which contributes one +1 and one -1 pivot.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from .quadfield import QuadExt, quad_sign


class SymMatrix:
    """An n x n symmetric matrix with entries in a fixed Q(sqrt(d))."""

    __slots__ = ("n", "d", "rows")

    def __init__(self, rows: Sequence[Sequence], d: int | None = None):
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if d is None:
            for r in rows:
                for x in r:
                    if isinstance(x, QuadExt):
                        d = x.d
                        break
                if d is not None:
                    break
            if d is None:
                d = 5
        coerced = []
        for r in rows:
            row = []
            for x in r:
                if isinstance(x, QuadExt):
                    if x.d != d and x.b != 0:
                        raise ValueError("entries live in different fields")
                    row.append(QuadExt(x.a, x.b, d) if x.d != d else x)
                else:
                    row.append(QuadExt(Fraction(x), 0, d))
            coerced.append(tuple(row))
        self.n = n
        self.d = d
        self.rows = tuple(coerced)
        for i in range(n):
            for j in range(i + 1, n):
                if self.rows[i][j] != self.rows[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, SymMatrix)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(self.rows)

    def submatrix(self, indices: Sequence[int]) -> "SymMatrix":
        idx = list(indices)
        return SymMatrix(
            [[self.rows[i][j] for j in idx] for i in idx], d=self.d
        )

    def to_lists(self):
        return [list(r) for r in self.rows]

    def to_json(self):
        return {
            "n": self.n,
            "d": self.d,
            "entries": [[x.to_json() for x in row] for row in self.rows],
        }


class SignatureCert(NamedTuple):
    """Inertia counts plus the exact pivot trace that certifies them."""

    n_plus: int
    n_minus: int
    n_zero: int
    pivots: tuple

    def replay(self) -> bool:
        plus = sum(1 for p in self.pivots if quad_sign(p) > 0)
        minus = sum(1 for p in self.pivots if quad_sign(p) < 0)
        return plus == self.n_plus and minus == self.n_minus

    def to_json(self):
        return {
            "n_plus": self.n_plus,
            "n_minus": self.n_minus,
            "n_zero": self.n_zero,
            "pivots": [
                p.to_json() if isinstance(p, QuadExt) else [p.numerator, p.denominator]
                for p in self.pivots
            ],
        }


def signature(matrix: SymMatrix) -> SignatureCert:
    """Inertia (n+, n-, n0) of a symmetric matrix by exact congruence.

    Simultaneous row/column elimination keeps the matrix symmetric and
    congruent to the input throughout, so the diagonal pivots' signs give
    the inertia.  Pivot choice is deterministic (least index first).
    """
    n = matrix.n
    m = [list(row) for row in matrix.rows]
    zero = QuadExt(0, 0, matrix.d)
    pivots = []
    k = 0
    while k < n:
        # Preferred pivot: the first nonzero diagonal entry at position >= k.
        pivot_row = None
        for i in range(k, n):
            if not m[i][i].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            # Diagonal of the active block is zero.  Find an off-diagonal
            # entry and fold it onto the diagonal with a hyperbolic step:
            # adding row/column j to row/column i makes m[i][i] = 2*m[i][j].
            target = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if not m[i][j].is_zero():
                        target = (i, j)
                        break
                if target:
                    break
            if target is None:
                break  # active block identically zero
            i, j = target
            for col in range(n):
                m[i][col] = m[i][col] + m[j][col]
            for row in range(n):
                m[row][i] = m[row][i] + m[row][j]
            continue
        if pivot_row != k:
            m[pivot_row], m[k] = m[k], m[pivot_row]
            for row in m:
                row[pivot_row], row[k] = row[k], row[pivot_row]
        p = m[k][k]
        pivots.append(p)
        factors = [m[i][k] / p for i in range(k + 1, n)]
        row_k = m[k]
        for i in range(k + 1, n):
            f = factors[i - k - 1]
            if f.is_zero():
                continue
            row_i = m[i]
            for j in range(k + 1, n):
                row_i[j] = row_i[j] - f * row_k[j]
        # Row k is spent; clear it only after every row has used it.
        for i in range(k + 1, n):
            m[i][k] = zero
            row_k[i] = zero
        k += 1
    n_plus = sum(1 for p in pivots if p.sign() > 0)
    n_minus = sum(1 for p in pivots if p.sign() < 0)
    return SignatureCert(n_plus, n_minus, n - len(pivots), tuple(pivots))


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a (not necessarily symmetric) matrix by Gaussian elimination.

    Independent of the congruence path in :func:`signature`; used to
    cross-check n_plus + n_minus = rank.
    """
    m = [list(r) for r in rows]
    if not m:
        return 0
    n_rows, n_cols = len(m), len(m[0])

    def is_zero(x):
        return x.is_zero() if isinstance(x, QuadExt) else x == 0

    rank = 0
    row = 0
    for col in range(n_cols):
        pivot = None
        for i in range(row, n_rows):
            if not is_zero(m[i][col]):
                pivot = i
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        pv = m[row][col]
        for i in range(row + 1, n_rows):
            if is_zero(m[i][col]):
                continue
            f = m[i][col] / pv
            m[i] = [m[i][j] - f * m[row][j] for j in range(n_cols)]
        row += 1
        rank += 1
        if row == n_rows:
            break
    return rank
