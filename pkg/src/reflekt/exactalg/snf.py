"""Smith normal form of integer matrices, with unimodular transforms.

Standard pivot-reduction algorithm: the smallest nonzero entry is moved to
the pivot position, its row and column are cleared by Euclidean steps, and a
final pass enforces the divisibility chain.  The left and right transforms
are accumulated so that ``U @ M @ V == S`` with ``U``, ``V`` unimodular.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence


class SmithDecomposition(NamedTuple):
    divisors: tuple          # nonzero elementary divisors d1 | d2 | ...
    left: tuple              # U, as tuple of row tuples
    smith: tuple             # S = U M V
    right: tuple             # V


def _identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_decomposition(rows: Sequence[Sequence[int]]) -> SmithDecomposition:
    m = [list(map(int, r)) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    U = _identity(n_rows)
    V = _identity(n_cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row[dst] += c * row[src]
        m[dst] = [x + c * y for x, y in zip(m[dst], m[src])]
        U[dst] = [x + c * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for row in m:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    limit = min(n_rows, n_cols)
    while t < limit:
        # Locate the nonzero entry of least absolute value in the active block.
        best = None
        for i in range(t, n_rows):
            row = m[i]
            for j in range(t, n_cols):
                v = row[j]
                if v != 0 and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(bi, t)
        if bj != t:
            swap_cols(bj, t)
        if m[t][t] < 0:
            negate_row(t)
        # Clear row and column t; restart if a reduction leaves a remainder
        # smaller than the pivot.
        while True:
            pivot = m[t][t]
            dirty = False
            for i in range(t + 1, n_rows):
                if m[i][t] != 0:
                    q = m[i][t] // pivot
                    if q:
                        add_row(t, i, -q)
                    if m[i][t] != 0:
                        swap_rows(i, t)
                        if m[t][t] < 0:
                            negate_row(t)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n_cols):
                if m[t][j] != 0:
                    q = m[t][j] // pivot
                    if q:
                        add_col(t, j, -q)
                    if m[t][j] != 0:
                        swap_cols(j, t)
                        if m[t][t] < 0:
                            negate_row(t)
                        dirty = True
                        break
            if not dirty:
                break
        # Divisibility: if the pivot misses an entry in the remaining block,
        # fold that row in and redo this pivot.
        pivot = m[t][t]
        offender = None
        for i in range(t + 1, n_rows):
            row = m[i]
            for j in range(t + 1, n_cols):
                if row[j] % pivot != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        t += 1

    divisors = tuple(m[i][i] for i in range(t) if m[i][i] != 0)
    return SmithDecomposition(
        divisors,
        tuple(tuple(r) for r in U),
        tuple(tuple(r) for r in m),
        tuple(tuple(r) for r in V),
    )


def smith_normal_form(rows: Sequence[Sequence[int]]) -> list:
    """Nonzero elementary divisors d1 | d2 | ... of an integer matrix."""
    return list(smith_decomposition(rows).divisors)


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def matmul_int(a, b):
    """Product of integer matrices given as sequences of rows."""
    if not a or not b:
        return ()
    n_inner = len(b)
    cols = list(zip(*b))
    return tuple(
        tuple(sum(row[k] * col[k] for k in range(n_inner)) for col in cols)
        for row in a
    )
