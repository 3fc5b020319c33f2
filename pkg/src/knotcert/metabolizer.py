"""Metabolizers (subgroups with M = M^perp) of torsion linking forms.

Enumeration runs one primary component at a time. Elementary abelian
components are handled as symplectic-style linear algebra over Z/p
(Lagrangian subspaces enumerated by RREF pivot pattern); other components
go through Hermite normal forms of lattices D Z^r <= L <= Z^r.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import isqrt, prod
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import intmat, modp
from .forms import Element, TorsionForm

DEFAULT_BUDGET = 10 ** 8


class MetabolizerError(ValueError):
    pass


class BudgetExceeded(MetabolizerError):
    pass


@dataclass(frozen=True)
class Metabolizer:
    """A metabolizer given by generators in the ambient canonical coordinates.

    ``key`` is a canonical form (per-prime HNF of the lifted lattice) used for
    equality and ordering; ``eigen_split`` maps deck eigenvalues mod p to
    generators of the corresponding eigen-components when known.
    """
    generators: Tuple[Element, ...]
    key: Tuple
    order: int
    equivariant: Optional[bool] = None
    eigen_split: Optional[Tuple[Tuple[int, int, Tuple[Element, ...]], ...]] = None

    def __lt__(self, other: "Metabolizer") -> bool:
        return self.key < other.key

    def with_flags(self, equivariant=None, eigen_split=None) -> "Metabolizer":
        return Metabolizer(self.generators, self.key, self.order,
                           self.equivariant if equivariant is None else equivariant,
                           self.eigen_split if eigen_split is None else eigen_split)

    def elements(self, form: TorsionForm) -> List[Element]:
        return span_elements(form, self.generators)

    def to_json(self) -> dict:
        d = {"generators": [list(g) for g in self.generators], "order": self.order}
        if self.equivariant is not None:
            d["equivariant"] = self.equivariant
        if self.eigen_split is not None:
            d["eigen_split"] = [{"prime": p, "eigenvalue": lam, "generators": [list(g) for g in gs]}
                                for p, lam, gs in self.eigen_split]
        return d


def span_elements(form: TorsionForm, gens: Sequence[Sequence[int]]) -> List[Element]:
    seen = {form.zero}
    frontier = [form.zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = form.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


# ---------------------------------------------------------------------------
# canonical keys

def lattice_key(rows: Sequence[Sequence[int]], facs: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """HNF of span(rows) + diag(facs) Z^r: a canonical name for the subgroup."""
    r = len(facs)
    gens = [list(x) for x in rows]
    for i, d in enumerate(facs):
        e = [0] * r
        e[i] = d
        gens.append(e)
    return tuple(tuple(row) for row in intmat.hnf_rows(gens, r))


def in_subgroup(x: Sequence[int], key, facs) -> bool:
    return lattice_key([list(k) for k in key] + [list(x)], facs) == key


# ---------------------------------------------------------------------------
# elementary p-groups: Lagrangian subspaces

def _gram_mod_p(form: TorsionForm, p: int) -> List[List[int]]:
    k = form.rank
    g = []
    for i in range(k):
        row = []
        for j in range(k):
            v = form.linking[i][j] * p
            if v.denominator != 1:
                raise MetabolizerError("linking values are not in (1/p)Z")
            row.append(int(v) % p)
        g.append(row)
    return g


def _solve_affine(a: List[List[int]], b: List[int], nvars: int, p: int):
    """All x in (Z/p)^nvars with a x = b; yields lists."""
    if not a:
        yield from (list(x) for x in product(range(p), repeat=nvars))
        return
    aug = [row + [bi] for row, bi in zip(a, b)]
    r, piv = modp.rref(aug, p)
    if nvars in piv:
        return
    free = [c for c in range(nvars) if c not in piv]
    for vals in product(range(p), repeat=len(free)):
        x = [0] * nvars
        for c, v in zip(free, vals):
            x[c] = v
        for row, pc in zip(r, piv):
            s = row[nvars] - sum(row[c] * x[c] for c in free)
            x[pc] = s % p
        yield x


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"metabolizer enumeration exceeded the budget of {self.limit} candidates")


def elementary_lagrangians(gram: List[List[int]], p: int, budget: _Budget,
                           pivot_sets: Optional[Iterable[Tuple[int, ...]]] = None
                           ) -> List[Tuple[Tuple[int, ...], ...]]:
    """Lagrangian subspaces of (Z/p)^k under a symmetric nondegenerate form,
    as RREF row tuples."""
    from itertools import combinations
    k = len(gram)
    if k % 2:
        return []
    h = k // 2
    out = []
    if pivot_sets is None:
        pivot_sets = combinations(range(k), h)
    for piv in pivot_sets:
        pset = set(piv)

        def extend(rows: List[List[int]], i: int):
            if i == h:
                out.append(tuple(tuple(r) for r in rows))
                return
            pc = piv[i]
            free = [c for c in range(pc + 1, k) if c not in pset]
            # v = e_pc + sum x_c e_c; constraints v^T G r = 0 for previous rows
            a, b = [], []
            for r in rows:
                gr = [sum(gram[s][t] * r[t] for t in range(k)) % p for s in range(k)]
                a.append([gr[c] for c in free])
                b.append((-gr[pc]) % p)
            for x in _solve_affine(a, b, len(free), p):
                budget.spend()
                v = [0] * k
                v[pc] = 1
                for c, xv in zip(free, x):
                    v[c] = xv
                q = sum(v[s] * gram[s][t] * v[t] for s in range(k) for t in range(k)) % p
                if q == 0:
                    extend(rows + [v], i + 1)

        extend([], 0)
    return out


# ---------------------------------------------------------------------------
# general p-groups: lattices between D Z^r and Z^r

def _hnf_lattices(facs: Sequence[int], index: int, budget: _Budget):
    """Row HNF bases of lattices L with diag(facs) Z^r <= L <= Z^r, [Z^r : L] = index."""
    r = len(facs)

    def divisor_chains(i, rem):
        if i == r:
            if rem == 1:
                yield ()
            return
        for h in range(1, facs[i] + 1):
            if facs[i] % h == 0 and rem % h == 0:
                for rest in divisor_chains(i + 1, rem // h):
                    yield (h,) + rest

    for diag in divisor_chains(0, index):
        slots = [(i, j) for i in range(r) for j in range(i + 1, r) if diag[j] > 1]
        ranges = [range(diag[j]) for i, j in slots]
        for vals in product(*ranges):
            budget.spend()
            rows = [[0] * r for _ in range(r)]
            for i in range(r):
                rows[i][i] = diag[i]
            for (i, j), v in zip(slots, vals):
                rows[i][j] = v
            if _contains_diag(rows, facs):
                yield rows


def _contains_diag(rows, facs) -> bool:
    """Does the upper-triangular lattice with these rows contain every d_i e_i?"""
    r = len(facs)
    for i, d in enumerate(facs):
        v = [0] * r
        v[i] = d
        for k in range(r):
            if v[k] % rows[k][k]:
                return False
            c = v[k] // rows[k][k]
            if c:
                v = [a - c * b for a, b in zip(v, rows[k])]
    return True


def general_metabolizer_generators(form: TorsionForm, budget: _Budget) -> List[List[List[int]]]:
    n = form.order
    m = isqrt(n)
    out = []
    for rows in _hnf_lattices(form.invariant_factors, n // m, budget):
        gens = [form.reduce(r) for r in rows]
        gens = [g for g in gens if any(g)]
        if all(form.lk(x, y) == 0 for a, x in enumerate(gens) for y in gens[a:]):
            out.append(gens)
    return out


# ---------------------------------------------------------------------------
# enumeration over the whole group

def _primary_metabolizers(form: TorsionForm, p: int, budget: _Budget, workers: int = 1):
    """Metabolizers of the p-primary part, generators in its own coordinates."""
    part, idx, cof = form.primary_part(p)
    if all(d == p for d in part.invariant_factors):
        gram = _gram_mod_p(part, p)
        if workers > 1 and part.rank >= 4:
            lags = _parallel_lagrangians(gram, p, budget, workers)
        else:
            lags = elementary_lagrangians(gram, p, budget)
        return part, idx, cof, [list(map(list, rows)) for rows in lags]
    return part, idx, cof, general_metabolizer_generators(part, budget)


def _lag_worker(args):
    gram, p, pivs, limit = args
    return elementary_lagrangians(gram, p, _Budget(limit), pivs)


def _parallel_lagrangians(gram, p, budget: _Budget, workers: int):
    from itertools import combinations
    k = len(gram)
    pivs = list(combinations(range(k), k // 2))
    chunks = [pivs[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        parts = list(ex.map(_lag_worker, [(gram, p, c, budget.limit) for c in chunks]))
    merged = sorted(set(x for part in parts for x in part))
    return merged


def metabolizer_from_parts(form: TorsionForm, parts) -> Metabolizer:
    """Direct sum of primary pieces, each (idx, cof, generators in part coords)."""
    gens = []
    for idx, cof, pgens in parts:
        for g in pgens:
            gens.append(form.embed_primary(g, idx, cof))
    gens = [g for g in gens if any(g)]
    key = lattice_key(gens, form.invariant_factors)
    order = form.order // prod(row[i] for i, row in enumerate(key)) if key else 1
    return Metabolizer(tuple(gens), key, order)


def _check_square(form: TorsionForm):
    n = form.order
    if isqrt(n) ** 2 != n:
        raise MetabolizerError(f"group order {n} is not a square: no metabolizer exists")


def enumerate_primary(form: TorsionForm, budget: int = DEFAULT_BUDGET, workers: int = 1
                      ) -> Dict[int, List[Metabolizer]]:
    """Metabolizers of each primary component, embedded in the whole group."""
    _check_square(form)
    b = _Budget(budget)
    out = {}
    for p in form.primes():
        part, idx, cof, found = _primary_metabolizers(form, p, b, workers)
        if isqrt(part.order) ** 2 != part.order:
            raise MetabolizerError(f"{p}-primary part has non-square order {part.order}")
        ms = sorted(metabolizer_from_parts(form, [(idx, cof, g)]) for g in found)
        out[p] = ms
    return out


def enumerate_metabolizers(form: TorsionForm, budget: int = DEFAULT_BUDGET, workers: int = 1
                           ) -> List[Metabolizer]:
    """All subgroups M with M = M^perp, sorted by canonical key."""
    per = enumerate_primary(form, budget, workers)
    if not per:
        return [Metabolizer((), lattice_key([], form.invariant_factors), 1)]
    out = []
    for combo in product(*per.values()):
        gens = [g for m in combo for g in m.generators]
        key = lattice_key(gens, form.invariant_factors)
        out.append(Metabolizer(tuple(gens), key, prod(m.order for m in combo)))
    out.sort()
    for m in out:
        assert_metabolizer(form, m)
    return out


def assert_metabolizer(form: TorsionForm, m: Metabolizer):
    if m.order * m.order != form.order:
        raise AssertionError(f"|M|^2 = {m.order ** 2} != |H| = {form.order}")
    for a, x in enumerate(m.generators):
        for y in m.generators[a:]:
            if form.lk(x, y) != 0:
                raise AssertionError("metabolizer generators do not annihilate each other")


# ---------------------------------------------------------------------------
# deck equivariance

def is_invariant(form: TorsionForm, m: Metabolizer) -> bool:
    return all(in_subgroup(form.deck(g), m.key, form.invariant_factors) for g in m.generators)


def equivariant_filter(ms: Sequence[Metabolizer], form: TorsionForm) -> List[Metabolizer]:
    """Keep the deck-invariant metabolizers, annotated with their eigen-split
    on elementary diagonalizable primary parts."""
    out = []
    for m in ms:
        if is_invariant(form, m):
            out.append(m.with_flags(True, eigen_split_of(form, m)))
    return out


def deck_eigen_data(form: TorsionForm, p: int):
    """Eigenvalues and eigenbases (part coordinates) of the deck on an
    elementary p-part, or None if not elementary/diagonalizable."""
    part, idx, cof = form.primary_part(p)
    if part.rank == 0 or any(d != p for d in part.invariant_factors):
        return None
    k = part.rank
    t = [[x % p for x in row] for row in part.deck_matrix]
    spaces = []
    total = 0
    for lam in range(1, p):
        mm = [[(t[i][j] - (lam if i == j else 0)) % p for j in range(k)] for i in range(k)]
        ns = modp.nullspace(mm, p)
        if ns:
            spaces.append((lam, ns))
            total += len(ns)
    if total != k:
        return None
    return part, idx, cof, spaces


def eigen_split_of(form: TorsionForm, m: Metabolizer):
    out = []
    for p in form.primes():
        data = deck_eigen_data(form, p)
        if data is None:
            continue
        part, idx, cof, spaces = data
        k = part.rank
        mp = []
        for g in m.generators:
            y = form.project_primary(g, idx, cof, part.invariant_factors)
            if any(y):
                mp.append(list(y))
        mrows = modp.rref(mp, p)[0] if mp else []
        for lam, basis in spaces:
            # M meets E_lam in the intersection of two subspaces
            inter = _intersect(mrows, basis, p, k)
            out.append((p, lam, tuple(form.embed_primary(v, idx, cof) for v in inter)))
    return tuple(out)


def _intersect(a, b, p, k):
    if not a or not b:
        return []
    # x = sum s_i a_i = sum t_j b_j
    cols = [list(r) for r in a] + [[(-x) % p for x in r] for r in b]
    mat = [[cols[c][i] for c in range(len(cols))] for i in range(k)]
    ns = modp.nullspace(mat, p)
    vecs = []
    for v in ns:
        x = [sum(v[i] * a[i][t] for i in range(len(a))) % p for t in range(k)]
        vecs.append(x)
    return modp.rref(vecs, p)[0] if vecs else []


def _all_subspaces(basis: List[List[int]], p: int, k: int):
    """Every subspace of span(basis), as RREF rows in ambient coordinates."""
    from itertools import combinations
    d = len(basis)
    for dim in range(d + 1):
        for piv in combinations(range(d), dim):
            pset = set(piv)
            slots = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, d) if c not in pset]
            for vals in product(range(p), repeat=len(slots)):
                coeffs = [[0] * d for _ in range(dim)]
                for i, pc in enumerate(piv):
                    coeffs[i][pc] = 1
                for (i, c), v in zip(slots, vals):
                    coeffs[i][c] = v
                yield [[sum(cf[j] * basis[j][t] for j in range(d)) % p for t in range(k)]
                       for cf in coeffs]


def equivariant_metabolizers_direct(form: TorsionForm, budget: int = DEFAULT_BUDGET
                                    ) -> Dict[int, List[Metabolizer]]:
    """Equivariant metabolizers per prime from the eigen-splitting alone.

    On an elementary part with diagonalizable deck action, E_lam pairs only
    with E_{1/lam}; an invariant metabolizer is a choice of subspace
    W <= E_lam for one member of each pair {lam, 1/lam}, completed by the
    annihilator of W in E_{1/lam}, plus a Lagrangian in each self-paired
    eigenspace. Parts where this does not apply fall back to enumerate and
    filter.
    """
    _check_square(form)
    b = _Budget(budget)
    out = {}
    for p in form.primes():
        data = deck_eigen_data(form, p)
        if data is None:
            part, idx, cof, found = _primary_metabolizers(form, p, b)
            ms = [metabolizer_from_parts(form, [(idx, cof, g)]) for g in found]
            out[p] = sorted(equivariant_filter(ms, form))
            continue
        part, idx, cof, spaces = data
        k = part.rank
        gram = _gram_mod_p(part, p)
        lamset = dict(spaces)
        choices = []
        done = set()
        for lam, basis in spaces:
            if lam in done:
                continue
            inv = pow(lam, -1, p)
            done.update({lam, inv})
            if inv == lam:
                # Lagrangians of the restricted form, in E_lam coordinates
                sub = [[sum(basis[i][s] * gram[s][t] * basis[j][t] for s in range(k) for t in range(k)) % p
                        for j in range(len(basis))] for i in range(len(basis))]
                opts = []
                for rows in elementary_lagrangians(sub, p, b):
                    opts.append([[sum(c * basis[j][t] for j, c in enumerate(r)) % p for t in range(k)]
                                 for r in rows])
                choices.append(opts)
                continue
            other = lamset.get(inv)
            if other is None or len(other) != len(basis):
                choices.append([])
                continue
            opts = []
            for w in _all_subspaces(basis, p, k):
                b.spend()
                # annihilator of W inside E_inv
                cons = [[sum(wv[s] * gram[s][t] * ov[t] for s in range(k) for t in range(k)) % p
                         for ov in other] for wv in w]
                if cons:
                    ann = modp.nullspace(cons, p)
                else:
                    ann = [[int(i == j) for j in range(len(other))] for i in range(len(other))]
                comp = [[sum(c * other[j][t] for j, c in enumerate(v)) % p for t in range(k)]
                        for v in ann]
                opts.append(w + comp)
            choices.append(opts)
        ms = []
        for combo in product(*choices):
            gens = [list(v) for piece in combo for v in piece]
            ms.append(metabolizer_from_parts(form, [(idx, cof, gens)]))
        for m in ms:
            assert_metabolizer_primary(form, m, part.order)
        out[p] = sorted(m.with_flags(True, eigen_split_of(form, m)) for m in ms)
    return out


def assert_metabolizer_primary(form, m, part_order):
    if m.order * m.order != part_order:
        raise AssertionError("primary metabolizer has the wrong order")
    for a, x in enumerate(m.generators):
        for y in m.generators[a:]:
            if form.lk(x, y) != 0:
                raise AssertionError("primary metabolizer is not isotropic")


def combine_primary(form: TorsionForm, per: Dict[int, List[Metabolizer]]) -> List[Metabolizer]:
    if not per:
        return [Metabolizer((), lattice_key([], form.invariant_factors), 1, True, ())]
    out = []
    for combo in product(*per.values()):
        gens = [g for m in combo for g in m.generators]
        key = lattice_key(gens, form.invariant_factors)
        split = tuple(s for m in combo for s in (m.eigen_split or ()))
        out.append(Metabolizer(tuple(gens), key, prod(m.order for m in combo),
                               all(m.equivariant for m in combo), split))
    return sorted(out)


def equivariant_metabolizers(form: TorsionForm, budget: int = DEFAULT_BUDGET) -> List[Metabolizer]:
    return combine_primary(form, equivariant_metabolizers_direct(form, budget))


# ---------------------------------------------------------------------------
# brute-force oracle

def brute_force_metabolizers(form: TorsionForm, max_order: int = 5 ** 4) -> List[frozenset]:
    """Scan the subgroup lattice (as element sets) up to order sqrt|H| and
    keep the self-annihilating subgroups of order sqrt|H|.

    Each step joins a subgroup with a cyclic subgroup; elements are indexed
    and added through a precomputed table. No linear algebra is involved.
    """
    import numpy as np

    n = form.order
    if n > max_order:
        raise MetabolizerError(f"group of order {n} is too large for the brute-force scan")
    m = isqrt(n)
    if m * m != n:
        return []
    elems = list(form.elements())
    index = {x: i for i, x in enumerate(elems)}
    coords = np.array(elems, dtype=np.int64).reshape(n, form.rank)
    facs = np.array(form.invariant_factors, dtype=np.int64)
    add = np.empty((n, n), dtype=np.int64)
    radix = [int(np.prod(facs[i + 1:])) for i in range(form.rank)]
    for i in range(n):
        s = (coords[i] + coords) % facs if form.rank else coords
        add[i] = s @ np.array(radix, dtype=np.int64) if form.rank else 0
    cyclic = set()
    for i in range(n):
        orbit = [0]
        x = i
        while x != 0:
            orbit.append(x)
            x = int(add[x, i])
        cyclic.add(frozenset(orbit))
    cyclic = [np.array(sorted(c), dtype=np.int64) for c in sorted(cyclic, key=sorted)]
    zero = frozenset([0])
    seen = {zero}
    layer = [zero]
    while layer:
        nxt = []
        for s in layer:
            arr = np.array(sorted(s), dtype=np.int64)
            for c in cyclic:
                t = frozenset(np.unique(add[np.ix_(arr, c)]).tolist())
                if len(t) <= m and t not in seen:
                    seen.add(t)
                    nxt.append(t)
        layer = nxt
    e = form.exponent
    lint = np.array([[int(x * e) for x in row] for row in form.linking], dtype=object)
    out = []
    for s in seen:
        if len(s) != m:
            continue
        idx = sorted(s)
        x = coords[idx].astype(object)
        if form.rank == 0 or not ((x.dot(lint).dot(x.T)) % e).any():
            out.append(frozenset(elems[i] for i in idx))
    return sorted(out, key=lambda s: sorted(s))


# ---------------------------------------------------------------------------
# classification against the K # -rho(K) eigen-frame

@dataclass(frozen=True)
class EigenFrame:
    """Labeled eigenvectors a, b (first summand) and a', b' (second summand).

    a and b' span E_c, b and a' span E_{1/c}; lk(a, b) = 1/p and
    lk(a', b') = -1/p.
    """
    p: int
    c: int
    alpha: Element
    beta: Element
    alpha_p: Element
    beta_p: Element


def frame_from_generators(gens, p: int) -> EigenFrame:
    terms = sorted({g.term for g in gens})
    by = {(terms.index(g.term), g.index): g for g in gens}
    try:
        a, b, a2, b2 = by[(0, 0)], by[(0, 1)], by[(1, 0)], by[(1, 1)]
    except KeyError:
        raise MetabolizerError("expected two genus-one summands with labeled generators")
    if not (a.eigenvalue == b2.eigenvalue and b.eigenvalue == a2.eigenvalue and a.eigenvalue != b.eigenvalue):
        raise MetabolizerError("generators are not in the K # -rho(K) eigen-configuration")
    return EigenFrame(p, a.eigenvalue, a.element, b.element, a2.element, b2.element)


def _coords(form, frame: EigenFrame, x) -> Tuple[int, int, int, int]:
    """Coordinates of x in the basis (a, b, a', b') mod p, via the linking form."""
    p = frame.p
    basis = [frame.alpha, frame.beta, frame.alpha_p, frame.beta_p]
    # dual pairing: a<->b, a'<->b'
    duals = [frame.beta, frame.alpha, frame.beta_p, frame.alpha_p]
    out = []
    for e, d in zip(basis, duals):
        num = form.lk(x, d) * p
        den = form.lk(e, d) * p
        out.append(int(num) * pow(int(den), -1, p) % p)
    return tuple(out)


def _p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


def classify(m: Metabolizer, form: TorsionForm, frame: EigenFrame) -> Tuple[str, Optional[int]]:
    """Family tag of an equivariant metabolizer of the (Z/p)^4 configuration.

    Returns (tag, r) with r set only for the graph type
    <a + r b', b + r^{-1} a'>.
    """
    p, c = frame.p, frame.c
    if _p_part(form.order, p) != p ** 4:
        raise MetabolizerError("classification expects a p-primary part of order p^4")
    rows = [list(_coords(form, frame, g)) for g in m.generators]
    rows = modp.rref(rows, p)[0] if rows else []
    if len(rows) != 2:
        raise MetabolizerError("metabolizer is not 2-dimensional")
    # E_c coordinates (a, b'), E_{1/c} coordinates (b, a')
    ec = _intersect(rows, [[1, 0, 0, 0], [0, 0, 0, 1]], p, 4)
    einv = _intersect(rows, [[0, 1, 0, 0], [0, 0, 1, 0]], p, 4)
    ci = pow(c, -1, p)
    if len(ec) == 2:
        return f"pure-{c}-eigenspace", None
    if len(einv) == 2:
        return f"pure-{ci}-eigenspace", None
    if len(ec) != 1 or len(einv) != 1:
        raise MetabolizerError("metabolizer is not deck-invariant")
    x, y = ec[0][0], ec[0][3]
    if y == 0:
        return "mixed-pure-pair", None
    if x == 0:
        return "mixed-pure-pair", None
    r = y * pow(x, -1, p) % p
    z, w = einv[0][1], einv[0][2]
    assert z and w and w * pow(z, -1, p) % p == pow(r, -1, p)
    return "graph-type", r


def mixed_variant(m: Metabolizer, form: TorsionForm, frame: EigenFrame) -> Optional[str]:
    """'alpha' for <a, a'>, 'beta' for <b, b'>, None otherwise."""
    p = frame.p
    rows = [list(_coords(form, frame, g)) for g in m.generators]
    rows = modp.rref(rows, p)[0]
    if rows == [[1, 0, 0, 0], [0, 0, 1, 0]]:
        return "alpha"
    if rows == [[0, 1, 0, 0], [0, 0, 0, 1]]:
        return "beta"
    return None
