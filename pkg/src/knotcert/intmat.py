"""Exact integer and rational matrix routines.

Matrices are plain lists of lists of Python ints (or Fractions). Everything
here is exact; sizes in this package stay well under a hundred rows, so the
schoolbook algorithms are plenty.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, NamedTuple, Sequence

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def transpose(a: Sequence[Sequence]) -> list:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def scale(a: Sequence[Sequence], c) -> list:
    return [[c * x for x in row] for row in a]


def add(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def block_diag(*blocks: Sequence[Sequence[int]]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return out


def det(a: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_rational(a: Sequence[Sequence]) -> List[List[Fraction]]:
    """Inverse over Q by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


class SmithForm(NamedTuple):
    """``left @ a @ right == diag(diagonal)`` with unimodular ``left``/``right``.

    ``left_inv`` is the exact inverse of ``left``; it carries the canonical
    generators of the cokernel back to presentation coordinates.
    """
    diagonal: List[int]
    left: Matrix
    left_inv: Matrix
    right: Matrix


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form with full transform tracking.

    Pivot choice is the smallest nonzero absolute value in the active
    submatrix, ties broken by row-major position, so the transforms are
    reproducible. Diagonal entries are nonnegative and each divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(r) for r in a]
    left = identity(m)
    left_inv = identity(m)
    right = identity(n)

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        left[i], left[j] = left[j], left[i]
        for row in left_inv:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def row_add(dst, src, c):
        # row_dst += c * row_src
        if c == 0:
            return
        rd, rs = d[dst], d[src]
        for k in range(n):
            rd[k] += c * rs[k]
        ld, ls = left[dst], left[src]
        for k in range(m):
            ld[k] += c * ls[k]
        for row in left_inv:
            row[src] -= c * row[dst]

    def col_add(dst, src, c):
        if c == 0:
            return
        for row in d:
            row[dst] += c * row[src]
        for row in right:
            row[dst] += c * row[src]

    def row_neg(i):
        d[i] = [-x for x in d[i]]
        left[i] = [-x for x in left[i]]
        for row in left_inv:
            row[i] = -row[i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(d[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    row_add(i, t, -(d[i][t] // d[t][t]))
            for j in range(t + 1, n):
                if d[t][j]:
                    col_add(j, t, -(d[t][j] // d[t][t]))
            # a leftover remainder is smaller than the pivot: promote it
            best = None
            for i in range(t + 1, m):
                x = abs(d[i][t])
                if x and (best is None or x < best[0]):
                    best = (x, i, 'r')
            for j in range(t + 1, n):
                x = abs(d[t][j])
                if x and (best is None or x < best[0]):
                    best = (x, j, 'c')
            if best is not None:
                done = False
                if best[2] == 'r':
                    row_swap(t, best[1])
                else:
                    col_swap(t, best[1])
                continue
            p = d[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if d[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                row_add(t, bad, 1)
                done = False
            if done:
                break
        if d[t][t] < 0:
            row_neg(t)
    diag = [d[i][i] for i in range(min(m, n))]
    return SmithForm(diag, left, left_inv, right)


def hnf_rows(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows: upper-triangular shape, positive pivots and
    entries above each pivot reduced into ``[0, pivot)``. Two generating sets
    span the same lattice iff their HNFs agree.
    """
    h = [list(r) for r in rows if any(r)]
    out: Matrix = []
    col = 0
    while h and col < ncols:
        nz = [r for r in h if r[col]]
        z = [r for r in h if not r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            rest = []
            for r in nz[1:]:
                q = r[col] // piv[col]
                r2 = [x - q * y for x, y in zip(r, piv)]
                if r2[col]:
                    rest.append(r2)
                elif any(r2):
                    z.append(r2)
            nz = [piv] + rest
        piv = nz[0]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for k, r in enumerate(out):
            q = r[col] // piv[col]
            if q:
                out[k] = [x - q * y for x, y in zip(r, piv)]
        out.append(piv)
        h = z
        col += 1
    return out
