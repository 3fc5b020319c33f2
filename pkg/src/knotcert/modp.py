"""Linear algebra over the prime field Z/p."""

from __future__ import annotations

from typing import List, Sequence, Tuple


def inv_mod(a: int, m: int) -> int:
    return pow(a % m, -1, m)


def rref(rows: Sequence[Sequence[int]], p: int) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns).

    Each pivot is 1, so the first nonzero coordinate of every row is 1.
    """
    m = [[x % p for x in r] for r in rows]
    ncols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = inv_mod(m[r][c], p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[0]) if rows else 0


def nullspace(a: Sequence[Sequence[int]], p: int) -> List[List[int]]:
    """Basis of {x : a x = 0 mod p}, as row vectors in RREF order."""
    ncols = len(a[0])
    r, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(r, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return rref(basis, p)[0] if basis else []


def in_span(v: Sequence[int], basis_rref: Sequence[Sequence[int]], p: int) -> bool:
    return rank(list(basis_rref) + [list(v)], p) == len(basis_rref)


def matmul_mod(a, b, p):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def matvec_mod(a, v, p):
    return [sum(x * y for x, y in zip(row, v)) % p for row in a]


def poly_roots_mod(coeffs: Sequence[int], p: int) -> List[int]:
    """Roots in Z/p of a polynomial given lowest-degree-first (brute force)."""
    out = []
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out
