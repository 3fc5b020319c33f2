"""Homology of cyclic branched covers from a Seifert matrix.

The q-fold cover Y_q(K) is presented by the q x q block circulant

    A = I (x) V - S (x) V^T,        S = cyclic shift, S[i][i+1] = 1,

acting on Z^{q * 2g} with copy-major coordinates (index = copy * 2g + gen).
Its cokernel is H_1(Y_q(K)); the deck transformation is the block shift S.
The linking form on the cokernel is

    lk(x, y) = -x^T A^{-1} (I - S) y   (mod 1),

the boundary form of the intersection lattice (I - S^{-1}) A of the
branched cover of B^4, pulled back along x -> (I - S^{-1}) x. The factor
(I - S) is what makes this symmetric: A^T = -S^{-1} A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import intmat, modp
from .forms import TorsionForm, mod1
from .knots import InfiniteHomologyError, SeifertMatrix


class CoverError(ValueError):
    """Invalid cover request (bad q, non-elementary p-part, ...)."""


def prime_power_base(q: int) -> Optional[int]:
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q
    while q % p == 0:
        q //= p
    return p if q == 1 else None


def shift_vector(x: Sequence[int], q: int, block: int, power: int = 1) -> List[int]:
    """Apply S^power to a copy-major vector: copy i+power lands in copy i."""
    out = [0] * len(x)
    for i in range(q):
        src = ((i + power) % q) * block
        out[i * block:(i + 1) * block] = x[src:src + block]
    return out


def reflect_vector(x: Sequence[int], q: int, block: int) -> List[int]:
    """Copy i -> copy -i. Identifies the cover of V with that of V^T."""
    out = [0] * len(x)
    for i in range(q):
        j = (-i) % q
        out[j * block:(j + 1) * block] = x[i * block:(i + 1) * block]
    return out


@dataclass(frozen=True)
class CoverPresentation:
    q: int
    seifert: SeifertMatrix
    matrix: Tuple[Tuple[int, ...], ...]

    @property
    def block(self) -> int:
        return self.seifert.size

    @property
    def labels(self) -> List[Tuple[int, int]]:
        return [(c, g) for c in range(self.q) for g in range(self.block)]

    def shift(self, x: Sequence[int], power: int = 1) -> List[int]:
        return shift_vector(x, self.q, self.block, power)


def cover_presentation(v: SeifertMatrix, q: int) -> CoverPresentation:
    if q % 2 == 0 or prime_power_base(q) is None:
        raise CoverError(f"q must be an odd prime power, got {q}")
    g2 = v.size
    n = q * g2
    a = intmat.zeros(n, n)
    vt = v.transpose().entries
    for c in range(q):
        d = (c + 1) % q
        for i in range(g2):
            for j in range(g2):
                a[c * g2 + i][c * g2 + j] += v.entries[i][j]
                a[c * g2 + i][d * g2 + j] -= vt[i][j]
    return CoverPresentation(q, v, tuple(tuple(r) for r in a))


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass
class CoverHomology(TorsionForm):
    """H_1(Y_q) as a finite group sum Z/d_i with deck action and linking form.

    Elements are integer vectors in canonical coordinates (one entry per
    invariant factor, reduced mod d_i).
    """
    presentation: Optional[CoverPresentation] = None
    to_canonical: List[List[int]] = field(default_factory=list)    # SNF left-transform rows
    from_canonical: List[List[int]] = field(default_factory=list)  # generator lifts

    @property
    def q(self) -> int:
        return self.presentation.q

    def canon(self, y: Sequence[int]) -> Tuple[int, ...]:
        """Presentation vector -> canonical coordinates."""
        return self.reduce([sum(r * c for r, c in zip(row, y)) for row in self.to_canonical])

    def lift(self, x: Sequence[int]) -> List[int]:
        n = len(self.presentation.matrix)
        out = [0] * n
        for xi, col in zip(x, self.from_canonical):
            if xi:
                for k in range(n):
                    out[k] += xi * col[k]
        return out

    def deck(self, x: Sequence[int], power: int = 1) -> Tuple[int, ...]:
        return super().deck(x, power % self.q)

    def to_json(self, eigen_primes: Sequence[int] = ()) -> dict:
        out = {
            "q": self.q,
            "invariant_factors": list(self.invariant_factors),
            "order": self.order,
            "deck_matrix": [list(r) for r in self.deck_matrix],
            "linking_matrix": [[frac_str(x) for x in r] for r in self.linking],
        }
        if eigen_primes:
            out["eigenspaces"] = {
                str(p): [{"eigenvalue": lam, "basis": [list(b) for b in basis]}
                         for lam, basis in eigenspaces(self, p)]
                for p in eigen_primes}
        return out


def homology(pres: CoverPresentation) -> CoverHomology:
    a = [list(r) for r in pres.matrix]
    n = len(a)
    if n == 0:
        return CoverHomology([], [], [], pres, [], [])
    snf = intmat.smith_normal_form(a)
    if any(d == 0 for d in snf.diagonal):
        raise InfiniteHomologyError("presentation is singular: not a rational homology sphere")
    idx = [i for i, d in enumerate(snf.diagonal) if d > 1]
    facs = [snf.diagonal[i] for i in idx]
    to_c = [snf.left[i] for i in idx]
    from_c = [[snf.left_inv[r][i] for r in range(n)] for i in idx]

    def canon(y):
        return [sum(r * c for r, c in zip(row, y)) % d for row, d in zip(to_c, facs)]

    k = len(idx)
    deck_cols = [canon(pres.shift(g)) for g in from_c]
    deck = [[deck_cols[j][i] for j in range(k)] for i in range(k)]

    # lk(g_i, g_j) = -g_i^T A^{-1} (I - S) g_j
    ainv = intmat.inverse_rational(a)
    cols = []
    for g in from_c:
        w = [x - y for x, y in zip(g, pres.shift(g))]
        cols.append(intmat.matvec(ainv, w))
    link = [[Fraction(0)] * k for _ in range(k)]
    for i, gi in enumerate(from_c):
        for j in range(k):
            s = -sum(x * y for x, y in zip(gi, cols[j]))
            link[i][j] = mod1(s)
    return CoverHomology(facs, link, deck, pres, to_c, from_c)


def cover_homology(v: SeifertMatrix, q: int) -> CoverHomology:
    return homology(cover_presentation(v, q))


# ---------------------------------------------------------------------------
# p-torsion and eigenspaces

def p_socle(h: CoverHomology, p: int) -> Tuple[List[int], List[Tuple[int, ...]], List[List[int]]]:
    """Basis of the p-torsion subgroup H[p] and the deck matrix on it mod p.

    Returns (generator indices, basis elements, deck matrix with columns
    the images of the basis elements in basis coordinates).
    """
    idx = [i for i, d in enumerate(h.invariant_factors) if d % p == 0]
    basis = []
    for i in idx:
        x = [0] * h.rank
        x[i] = h.invariant_factors[i] // p
        basis.append(tuple(x))
    cols = []
    for b in basis:
        y = h.deck(b)
        col = []
        for i in idx:
            step = h.invariant_factors[i] // p
            assert y[i] % step == 0
            col.append((y[i] // step) % p)
        cols.append(col)
    tp = [[cols[j][i] for j in range(len(idx))] for i in range(len(idx))]
    return idx, basis, tp


def is_elementary(h: CoverHomology, p: int) -> bool:
    return all(d % (p * p) for d in h.invariant_factors)


def deck_eigenvalues(h: CoverHomology, p: int) -> List[int]:
    """Eigenvalues mod p of the deck action on H[p] (any p-primary shape)."""
    _, basis, tp = p_socle(h, p)
    k = len(basis)
    if not k:
        return []
    out = []
    for lam in range(1, p):
        m = [[(tp[i][j] - (lam if i == j else 0)) % p for j in range(k)] for i in range(k)]
        if modp.rank(m, p) < k:
            out.append(lam)
    return out


def eigenspaces(h: CoverHomology, p: int) -> List[Tuple[int, List[Tuple[int, ...]]]]:
    """Deck eigenspaces of the p-primary part, bases in canonical coordinates.

    The p-primary part must be elementary abelian and the deck action
    diagonalizable over Z/p.
    """
    if h.order % p:
        raise CoverError(f"{p} does not divide the group order")
    if not is_elementary(h, p):
        raise CoverError(f"the {p}-primary part is not elementary abelian")
    idx, basis, tp = p_socle(h, p)
    k = len(basis)
    out = []
    total = 0
    for lam in deck_eigenvalues(h, p):
        m = [[(tp[i][j] - (lam if i == j else 0)) % p for j in range(k)] for i in range(k)]
        ns = modp.nullspace(m, p)
        vecs = []
        for v in ns:
            x = [0] * h.rank
            for coeff, b in zip(v, basis):
                for t in range(h.rank):
                    x[t] += coeff * b[t]
            vecs.append(h.reduce(x))
        total += len(vecs)
        out.append((lam, vecs))
    if total != k:
        raise CoverError(f"deck action on the {p}-part is not diagonalizable")
    return out


def linking_pair(h: CoverHomology, x: Sequence[int], y: Sequence[int]) -> Fraction:
    return h.lk(x, y)


def eigen_pairing_normalized(h: CoverHomology, x, y, p: int) -> Tuple[int, ...]:
    """Rescale y so that lk(x, y) = 1/p; x, y must pair nontrivially."""
    v = h.lk(x, y) * p
    assert v.denominator == 1 and v % p, "vectors do not pair to a unit"
    s = pow(int(v) % p, -1, p)
    return h.mul(s, y)


# ---------------------------------------------------------------------------
# Labeled eigen-generators of a knot expression

@dataclass(frozen=True)
class LabeledGenerator:
    """Deck eigenvector attached to generator ``index`` of term ``term``.

    ``own_eigenvalue`` is the eigenvalue in the cover of the term's knot with
    its own orientation; ``eigenvalue`` is the one seen in the whole cover,
    inverted for transposed (reversed xor mirrored) terms.
    """
    name: str
    term: int
    index: int
    eigenvalue: int
    own_eigenvalue: int
    element: Tuple[int, ...]


def root_mod(r: Fraction, p: int) -> int:
    if r.denominator % p == 0:
        raise CoverError(f"generator root {r} is not defined mod {p}")
    return r.numerator * pow(r.denominator, -1, p) % p


def _own_generators(knot, q: int, p: int):
    """Normalized eigenvectors of the labeled generators in the knot's own cover.

    The lowest labeled generator has first nonzero coordinate 1; every other
    one pairing nontrivially with it is rescaled to linking 1/p.
    """
    h = cover_homology(knot.pattern, q)
    if h.order % p:
        return h, []
    spaces = dict(eigenspaces(h, p))
    out = []
    for i, r in sorted(knot.generator_roots):
        lam = root_mod(r, p)
        basis = spaces.get(lam, [])
        if len(basis) != 1:
            raise CoverError(f"eigenvalue {lam} of generator {i} is not a simple eigenline mod {p}")
        out.append((i, lam, basis[0]))
    if len(out) > 1:
        i0, lam0, v0 = out[0]
        fixed = [(i0, lam0, v0)]
        for i, lam, v in out[1:]:
            if h.lk(v0, v) != 0:
                v = eigen_pairing_normalized(h, v0, v, p)
            fixed.append((i, lam, v))
        out = fixed
    return h, out


def generator_name(index: int, term: int) -> str:
    base = "ab"[index] if index < 2 else f"g{index}_"
    return f"{base}{term}"


def labeled_generators(expr, q: int, p: int, h: Optional[CoverHomology] = None
                       ) -> List[LabeledGenerator]:
    """Eigen-generators of every term carrying ``generator_roots``, as elements
    of H_1(Y_q) of the whole expression. Names count labeled terms only, so
    unlabeled summands do not shift them."""
    if h is None:
        h = cover_homology(expr.matrix, q)
    total = expr.matrix.size
    out: List[LabeledGenerator] = []
    offset = 0
    ordinal = 0
    for t, term in enumerate(expr.terms):
        g2 = term.knot.pattern.size
        if term.knot.generator_roots and q * g2:
            own_h, gens = _own_generators(term.knot, q, p)
            label = ordinal
            ordinal += 1
            for i, lam, v in gens:
                small = own_h.lift(v)
                if term.transposed:
                    small = reflect_vector(small, q, g2)
                big = [0] * (q * total)
                for c in range(q):
                    for g in range(g2):
                        big[c * total + offset + g] = small[c * g2 + g]
                x = h.canon(big)
                ev = pow(lam, -1, p) if term.transposed else lam
                if h.deck(x) != h.mul(ev, x):
                    raise CoverError("transported generator is not a deck eigenvector")
                out.append(LabeledGenerator(generator_name(i, label), t, i, ev, lam, x))
        offset += g2
    return out
