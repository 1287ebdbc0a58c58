"""Exact linear algebra over the rationals: echelon forms, ranks, solving.

Matrices are lists of lists of Fractions (rows).  Nothing here is clever;
rank decisions must be tolerance-free, so everything runs in exact
arithmetic.
"""

from __future__ import annotations

from fractions import Fraction


def zeros(rows: int, cols: int):
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def copy(m):
    return [row[:] for row in m]


def mat_mul(a, b):
    if not a or not b:
        return []
    rows, inner, cols = len(a), len(b), len(b[0])
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            x = ai[k]
            if x == 0:
                continue
            bk = b[k]
            for j in range(cols):
                oi[j] += x * bk[j]
    return out


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def rref(m):
    """Reduced row echelon form; returns (rref_matrix, pivot_column_indices)."""
    m = copy(m)
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def column_space_pivots(m) -> list[int]:
    """Row coordinates spanning the column space, greedily in row order.

    The standard coordinates NOT returned form a coordinate complement of
    the column space.
    """
    _, pivots = rref(transpose(m))
    return pivots


def solve(a, b):
    """One solution x of a x = b (columns of b), or None if inconsistent."""
    if not a:
        return [] if all(all(x == 0 for x in row) for row in b) else None
    rows, cols = len(a), len(a[0])
    bcols = len(b[0]) if b else 0
    aug = [a[i][:] + b[i][:] for i in range(rows)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:cols]) and any(x != 0 for x in row[cols:]):
            return None
    x = zeros(cols, bcols)
    for r, c in enumerate(pivots):
        if c >= cols:
            return None
        for j in range(bcols):
            x[c][j] = red[r][cols + j]
    return x


def in_row_span(basis_rows, v) -> bool:
    if all(x == 0 for x in v):
        return True
    if not basis_rows:
        return False
    return rank(basis_rows) == rank(basis_rows + [list(v)])


def row_space_contains(sub_rows, big_rows) -> bool:
    """True iff the row space of sub_rows lies inside that of big_rows."""
    if not sub_rows:
        return True
    if not big_rows:
        return all(all(x == 0 for x in row) for row in sub_rows)
    r_big = rank(big_rows)
    return rank(big_rows + sub_rows) == r_big
