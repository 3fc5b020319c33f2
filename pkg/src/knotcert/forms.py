"""Finite abelian groups with a Q/Z-valued bilinear form and optional
automorphism, in canonical coordinates ``sum Z/d_i``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Iterator, List, Optional, Sequence, Tuple

Element = Tuple[int, ...]


def mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def factorize_small(n: int) -> List[Tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


@dataclass
class TorsionForm:
    invariant_factors: List[int]
    linking: List[List[Fraction]]
    deck_matrix: Optional[List[List[int]]] = None   # column j = image of generator j

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        e = 1
        for d in self.invariant_factors:
            e = e * d // gcd(e, d)
        return e

    @property
    def zero(self) -> Element:
        return (0,) * self.rank

    def reduce(self, x: Sequence[int]) -> Element:
        return tuple(int(a) % d for a, d in zip(x, self.invariant_factors))

    def add(self, x, y) -> Element:
        return self.reduce([a + b for a, b in zip(x, y)])

    def mul(self, c: int, x) -> Element:
        return self.reduce([c * a for a in x])

    def lk(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        s = Fraction(0)
        for i, xi in enumerate(x):
            if xi:
                row = self.linking[i]
                for j, yj in enumerate(y):
                    if yj:
                        s += xi * yj * row[j]
        return mod1(s)

    def deck(self, x: Sequence[int], power: int = 1) -> Element:
        if self.deck_matrix is None:
            raise ValueError("form carries no deck transformation")
        y = self.reduce(x)
        k = self.rank
        for _ in range(power):
            y = self.reduce([sum(self.deck_matrix[i][j] * y[j] for j in range(k))
                             for i in range(k)])
        return y

    def element_order(self, x: Sequence[int]) -> int:
        o = 1
        for a, d in zip(x, self.invariant_factors):
            k = d // gcd(a % d, d)
            o = o * k // gcd(o, k)
        return o

    def elements(self) -> Iterator[Element]:
        return product(*(range(d) for d in self.invariant_factors))

    def primes(self) -> List[int]:
        return [p for p, _ in factorize_small(self.order)] if self.order > 1 else []

    def is_symmetric(self) -> bool:
        k = self.rank
        return all(self.linking[i][j] == self.linking[j][i] for i in range(k) for j in range(k))

    def is_nonsingular(self) -> bool:
        """x -> lk(x, -) is injective (hence bijective onto the dual)."""
        for p in self.primes():
            idx = [i for i, d in enumerate(self.invariant_factors) if d % p == 0]
            rows = []
            for i in idx:
                step = self.invariant_factors[i] // p
                row = []
                for j in range(self.rank):
                    v = mod1(step * self.linking[i][j]) * p
                    assert v.denominator == 1
                    row.append(int(v) % p)
                rows.append(row)
            from .modp import rank
            if rank(rows, p) < len(idx):
                return False
        return True

    def primary_part(self, p: int) -> Tuple["TorsionForm", List[int], List[int]]:
        """The p-primary summand as a form on sum Z/p^{e_i}.

        Returns (form, generator indices, cofactors m_i); coordinate y of the
        summand corresponds to x_i = m_i * y_i in the whole group.
        """
        idx, facs, cof = [], [], []
        for i, d in enumerate(self.invariant_factors):
            pe = 1
            while d % (pe * p) == 0:
                pe *= p
            if pe > 1:
                idx.append(i)
                facs.append(pe)
                cof.append(d // pe)
        k = len(idx)
        link = [[mod1(cof[a] * cof[b] * self.linking[idx[a]][idx[b]]) for b in range(k)]
                for a in range(k)]
        deck = None
        if self.deck_matrix is not None:
            cols = []
            for b in range(k):
                x = [0] * self.rank
                x[idx[b]] = cof[b]
                y = self.deck(x)
                col = []
                for a in range(k):
                    assert y[idx[a]] % cof[a] == 0
                    col.append((y[idx[a]] // cof[a]) % facs[a])
                cols.append(col)
            deck = [[cols[b][a] for b in range(k)] for a in range(k)]
        return TorsionForm(facs, link, deck), idx, cof

    def embed_primary(self, y: Sequence[int], idx: Sequence[int], cof: Sequence[int]) -> Element:
        x = [0] * self.rank
        for yi, i, m in zip(y, idx, cof):
            x[i] = yi * m
        return self.reduce(x)

    def project_primary(self, x: Sequence[int], idx, cof, facs) -> Element:
        """p-component of x in primary-part coordinates."""
        return tuple((x[i] * pow(m, -1, f)) % f for i, m, f in zip(idx, cof, facs))


def form_from_symmetric(a: Sequence[Sequence[int]]) -> TorsionForm:
    """Linking form x^T A^{-1} y on coker A for a nondegenerate symmetric A."""
    from . import intmat
    n = len(a)
    snf = intmat.smith_normal_form([list(r) for r in a])
    if any(d == 0 for d in snf.diagonal):
        raise ValueError("matrix is singular")
    idx = [i for i, d in enumerate(snf.diagonal) if d > 1]
    facs = [snf.diagonal[i] for i in idx]
    gens = [[snf.left_inv[r][i] for r in range(n)] for i in idx]
    ainv = intmat.inverse_rational(a)
    link = [[mod1(sum(x * y for x, y in zip(gi, intmat.matvec(ainv, gj)))) for gj in gens]
            for gi in gens]
    return TorsionForm(facs, link)
