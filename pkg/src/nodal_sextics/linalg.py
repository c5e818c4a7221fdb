"""Exact integer and rational matrix helpers.

Matrices are tuples of row tuples of Python ints (or Fractions where noted).
Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    if not m:
        return ()
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def bilinear(gram: Sequence[Sequence], x: Sequence, y: Sequence):
    return sum(xi * gij * yj for xi, row in zip(x, gram) for gij, yj in zip(row, y))


def columns(m: Sequence[Sequence]) -> list[tuple]:
    return [tuple(c) for c in transpose(m)]


def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(tuple(c[i] for c in cols) for i in range(nrows))


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_inverse(m: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return (u, d, v) with u @ m @ v == d.

    d is diagonal with nonnegative entries d[i][i] dividing d[i+1][i+1];
    u and v are unimodular.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return as_matrix(u), as_matrix(a), as_matrix(v)


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def hermite_rows(vectors: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by `vectors`.

    Returns a canonical basis (pivots positive, entries above each pivot
    reduced into [0, pivot)). Zero rows are dropped.
    """
    rows = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    col = 0
    while rows and col < dim:
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for k in range(dim):
                    r[k] -= q * piv[k]
            nz = [r for r in nz if r[col] != 0]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        rows = [r for r in rows if r[col] == 0 and r is not piv and any(r)]
        basis.append(piv)
        col += 1
    for i, row in enumerate(basis):
        c = next(k for k in range(dim) if row[k])
        for prev in basis[:i]:
            q = prev[c] // row[c]
            if q:
                for k in range(dim):
                    prev[k] -= q * row[k]
    return [tuple(r) for r in basis]


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis (HNF-canonical) of {x in Z^ncols : m x = 0}. Always saturated."""
    if not m:
        return [tuple(r) for r in identity(ncols)]
    _, d, v = smith_normal_form(m)
    rank = sum(1 for i in range(min(len(d), ncols)) if d[i][i] != 0)
    kernel = [tuple(v[i][j] for i in range(ncols)) for j in range(rank, ncols)]
    return hermite_rows(kernel, ncols)


def solve_mod2(a: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[list[int] | None, int]:
    """Solve a x = b over GF(2).

    Returns (one solution or None, nullity).
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [[x % 2 for x in row] + [bi % 2] for row, bi in zip(a, b)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(nrows):
            if i != r and aug[i][c]:
                aug[i] = [x ^ y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] for row in aug[r:]):
        return None, ncols - r
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = aug[i][-1]
    return x, ncols - r
