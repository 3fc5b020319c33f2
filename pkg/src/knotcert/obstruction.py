"""Slicing-obstruction shadows: Levine-Tristram signatures, the discriminant
(d-norm) test, Casson-Gordon signature sums, and the d-invariant ledger.

Signatures are exact. For a Seifert matrix V the coefficients of the
characteristic polynomial of t*M(t), M(t) = (1 - t) V + (1 - 1/t) V^T, are
computed once as polynomials in Q[t] (Faddeev-LeVerrier). At t = exp(2 pi i r)
each coefficient is a real cyclotomic number: it is zero exactly when the
cyclotomic polynomial divides it, and otherwise its sign is certified by
interval arithmetic with doubling precision. M is Hermitian, so its
characteristic polynomial is real-rooted and Descartes' rule of signs counts
positive and negative eigenvalues exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from mpmath import iv

from .knots import AlexanderPolynomial, SeifertMatrix, alexander, root_product
from .primegen import factorize, multiplicative_order


class SignatureError(ArithmeticError):
    pass


class SingularAtRoot(SignatureError):
    """exp(2 pi i r) is a root of the Alexander polynomial."""


# ---------------------------------------------------------------------------
# polynomials over Q, lowest degree first

def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _pscale(a, c):
    return [c * x for x in a]


def _ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, m):
    """Remainder of a by a monic integer polynomial m."""
    a = [Fraction(x) for x in a]
    d = len(m) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            for j in range(d + 1):
                a[k - d + j] -= c * m[j]
    return _ptrim(a[:d])


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> Tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            den = cyclotomic(d)
            # exact division by a monic polynomial
            q = [0] * (len(num) - len(den) + 1)
            r = list(num)
            for k in range(len(q) - 1, -1, -1):
                c = r[k + len(den) - 1]
                q[k] = c
                for j, x in enumerate(den):
                    r[k + j] -= c * x
            num = q
    return tuple(num)


# ---------------------------------------------------------------------------
# Levine-Tristram signatures

@lru_cache(maxsize=256)
def _charpoly_coeffs(v: SeifertMatrix) -> Tuple[Tuple[Fraction, ...], ...]:
    """c_0..c_n with det(x I - N(t)) = sum c_k(t) x^(n-k), N = t M(t)."""
    n = v.size
    a = v.entries
    # N(t) = (t - t^2) V + (t - 1) V^T, entries as polynomials in t
    nm = [[_ptrim([Fraction(-a[j][i]), Fraction(a[i][j] + a[j][i]), Fraction(-a[i][j])])
           for j in range(n)] for i in range(n)]

    def matmul(x, y):
        return [[_ptrim(_sum_polys(_pmul(x[i][k], y[k][j]) for k in range(n))) for j in range(n)]
                for i in range(n)]

    coeffs = [(Fraction(1),)]
    mk = [[[] for _ in range(n)] for _ in range(n)]
    c_prev = [Fraction(1)]
    for k in range(1, n + 1):
        # M_k = N M_{k-1} + c_{k-1} I ; c_k = -tr(N M_k) / k
        mk = matmul(nm, mk) if k > 1 else [[[] for _ in range(n)] for _ in range(n)]
        for i in range(n):
            mk[i][i] = _ptrim(_padd(mk[i][i], c_prev))
        nmk = matmul(nm, mk)
        tr = _sum_polys(nmk[i][i] for i in range(n))
        ck = _ptrim(_pscale(tr, Fraction(-1, k)))
        coeffs.append(tuple(ck))
        c_prev = ck
    return tuple(coeffs)


def _sum_polys(ps: Iterable[List[Fraction]]) -> List[Fraction]:
    out: List[Fraction] = []
    for p in ps:
        out = _padd(out, p)
    return out


def _is_zero_at_root(poly: Sequence[Fraction], m: int) -> bool:
    if not _ptrim(poly):
        return True
    return not _pmod(poly, cyclotomic(m))


def _certified_sign(poly: Sequence[Fraction], shift: int, r: Fraction) -> int:
    """Sign of the real number sum_j poly[j] * exp(2 pi i r (j - shift)),
    known to be real and nonzero."""
    prec = 53
    while True:
        iv.prec = prec
        two_pi_r = 2 * iv.pi * iv.mpf(r.numerator) / r.denominator
        s = iv.mpf(0)
        for j, c in enumerate(poly):
            if c:
                s += iv.mpf(c.numerator) / c.denominator * iv.cos(two_pi_r * (j - shift))
        if s.a > 0:
            return 1
        if s.b < 0:
            return -1
        prec *= 2
        if prec > 1 << 16:
            raise SignatureError("sign determination did not converge")


def _coefficient_signs(v: SeifertMatrix, r: Fraction) -> List[int]:
    m = r.denominator
    out = []
    for k, ck in enumerate(_charpoly_coeffs(v)):
        # c_k of M is c_k of N divided by t^k
        if _is_zero_at_root(ck, m) or (r.numerator != 1 and _is_zero_at_root_power(ck, r)):
            out.append(0)
        else:
            s = _certified_sign(ck, k, r)
            assert s != 0
            out.append(s)
    return out


def _is_zero_at_root_power(poly, r: Fraction) -> bool:
    # exp(2 pi i a/m) with gcd(a, m) = 1 is another primitive m-th root, a
    # Galois conjugate of exp(2 pi i/m): vanishing is the same test.
    return _is_zero_at_root(poly, r.denominator)


def _sign_changes(signs: Sequence[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def levine_tristram(v: SeifertMatrix, r) -> int:
    """Signature of (1 - w) V + (1 - conj w) V^T at w = exp(2 pi i r), 0 < r < 1."""
    r = Fraction(r)
    if not 0 < r < 1:
        raise ValueError("r must lie strictly between 0 and 1")
    if v.size == 0:
        return 0
    signs = _coefficient_signs(v, r)
    n = v.size
    if signs[n] == 0:
        raise SingularAtRoot(f"singular at root of Delta: exp(2 pi i {r}) is a root")
    pos = _sign_changes(signs)
    neg = _sign_changes([s * (-1) ** (n - k) for k, s in enumerate(signs)])
    assert pos + neg == n
    return pos - neg


def fold(r: Fraction) -> Fraction:
    r = r - (r.numerator // r.denominator)
    return 1 - r if r > Fraction(1, 2) else r


def signature_profile(v: SeifertMatrix, samples: Optional[Sequence] = None
                      ) -> List[Tuple[str, Optional[int]]]:
    """[(r as "a/b", sigma_r)] over samples in (0, 1/2]; None where singular."""
    if samples is None:
        samples = sorted({Fraction(k, 48) for k in range(1, 25)})
    out = []
    for r in samples:
        r = Fraction(r)
        try:
            val: Optional[int] = levine_tristram(v, r)
        except SingularAtRoot:
            val = None
        out.append((f"{r.numerator}/{r.denominator}", val))
    return out


@dataclass(frozen=True)
class CGSignatureQuery:
    companion: SeifertMatrix
    p: int
    c: int
    b: int
    epsilon: int = 1

    def __post_init__(self):
        if pow(self.c, 3, self.p) != 1 or self.c % self.p == 1:
            raise ValueError("c must be a nontrivial cube root of unity mod p")
        if self.epsilon and self.b % self.p == 0:
            raise ValueError("b must be nonzero mod p")


def orbit(b: int, c: int, p: int) -> List[int]:
    return [b % p, b * c % p, b * c * c % p]


def signature_sum(qy: CGSignatureQuery) -> int:
    """epsilon * (sigma_{b/p} + sigma_{cb/p} + sigma_{c^2 b/p}), arguments folded into (0, 1/2]."""
    if qy.epsilon == 0:
        return 0
    return sum(levine_tristram(qy.companion, fold(Fraction(x, qy.p)))
               for x in orbit(qy.b, qy.c, qy.p))


def exists_negative_b(v: SeifertMatrix, p: int, c: int) -> Optional[int]:
    """Least b in 1..p-1 whose orbit {b, cb, c^2 b}/p hits a negative signature."""
    if pow(c, 3, p) != 1 or c % p == 1:
        raise ValueError("c must be a nontrivial cube root of unity mod p")
    cache: Dict[int, int] = {}
    for b in range(1, p):
        for x in orbit(b, c, p):
            if x not in cache:
                try:
                    cache[x] = levine_tristram(v, fold(Fraction(x, p)))
                except SingularAtRoot:
                    cache[x] = 0
            if cache[x] < 0:
                return b
    return None


# ---------------------------------------------------------------------------
# discriminants and d-norms

@dataclass(frozen=True)
class Discriminant:
    product: int
    value: Optional[int]        # integer square root, when it exists

    @property
    def is_square(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        return {"product": self.product, "value": self.value, "is_square": self.is_square}


def discriminant(poly: AlexanderPolynomial, q: int) -> Discriminant:
    prod_ = root_product(poly, q)
    if prod_ > 0:
        r = isqrt(prod_)
        if r * r == prod_:
            return Discriminant(prod_, r)
    return Discriminant(prod_, None)


@dataclass(frozen=True)
class DNormCertificate:
    n: int
    d: int
    verdict: bool
    witness: Optional[Tuple[int, int, int]] = None   # (prime, exponent, order mod d)

    def to_json(self) -> dict:
        out = {"n": self.n, "d": self.d, "verdict": self.verdict}
        if self.witness is not None:
            p, e, o = self.witness
            out["witness"] = {"p": p, "exponent": e, "order": o}
        return out


def is_d_norm(n: int, d: int) -> DNormCertificate:
    """n is a d-norm when every prime factor coprime to d with odd exponent has
    odd multiplicative order mod d. The witness is the least violating prime."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    for p, e in factorize(n).items():
        if e % 2 and gcd(p, d) == 1:
            o = multiplicative_order(p % d, d)
            if o % 2 == 0:
                return DNormCertificate(n, d, False, (p, e, o))
    return DNormCertificate(n, d, True)


# ---------------------------------------------------------------------------
# the d-invariant ledger

_OPS = {"<=": "<=", "≤": "<=", ">=": ">=", "≥": ">=", "=": "=", "==": "=",
        "<": "<", ">": ">", "!=": "!=", "≠": "!="}


class MissingLedgerEntry(KeyError):
    pass


@dataclass(frozen=True)
class Bound:
    """A constraint ``x op value`` on a rational quantity."""
    op: str
    value: Fraction
    citation: str = ""

    def __post_init__(self):
        if self.op not in _OPS.values():
            raise ValueError(f"unknown bound operator {self.op!r}")
        if self.op == "!=" and self.value != 0:
            raise ValueError("only '!= 0' bounds are supported")

    def negate(self) -> "Bound":
        flip = {"<=": ">=", ">=": "<=", "<": ">", ">": "<", "=": "=", "!=": "!="}
        return Bound(flip[self.op], -self.value, self.citation)

    def interval(self):
        """(lo, lo_open, hi, hi_open) with None for infinite ends, or None for '!='."""
        v = self.value
        return {"=": (v, False, v, False), "<=": (None, True, v, False), "<": (None, True, v, True),
                ">=": (v, False, None, True), ">": (v, True, None, True)}.get(self.op)

    def to_json(self) -> dict:
        return {"op": self.op, "value": f"{self.value.numerator}/{self.value.denominator}"}


ZERO = Bound("=", Fraction(0), "")


def bounds_exclude_zero(bounds: Sequence[Bound]) -> bool:
    """Does every x_1 + ... + x_k with x_i satisfying bound i differ from 0?"""
    nonexact = [b for b in bounds if not (b.op == "=" and b.value == 0)]
    if len(nonexact) == 1 and nonexact[0].op == "!=":
        return True
    if any(b.op == "!=" for b in bounds):
        return False
    lo, lo_open, hi, hi_open = Fraction(0), False, Fraction(0), False
    for b in bounds:
        l, lo2, h, ho2 = b.interval()
        if lo is not None:
            lo = None if l is None else lo + l
            lo_open = lo_open or lo2
        if hi is not None:
            hi = None if h is None else hi + h
            hi_open = hi_open or ho2
    if lo is not None and (lo > 0 or (lo == 0 and lo_open)):
        return True
    if hi is not None and (hi < 0 or (hi == 0 and hi_open)):
        return True
    return False


@dataclass(frozen=True)
class LedgerEntry:
    knot: str
    q: int
    orbit: str
    bound: Bound

    def to_json(self) -> dict:
        return {"knot": self.knot, "q": self.q, "orbit": self.orbit,
                "bound": self.bound.to_json(), "citation": self.bound.citation}


TRIVIAL_KNOTS = ("U", "unknot")


@dataclass(frozen=True)
class DLedger:
    entries: Tuple[LedgerEntry, ...] = ()

    @classmethod
    def from_json(cls, data) -> "DLedger":
        if not isinstance(data, list):
            raise ValueError("ledger must be a JSON list of entries")
        out = []
        for rec in data:
            if not isinstance(rec, dict) or not isinstance(rec.get("bound"), dict):
                raise ValueError(f"malformed ledger entry {rec!r}")
            b = rec["bound"]
            op = _OPS.get(str(b["op"]))
            if op is None:
                raise ValueError(f"unknown bound operator {b['op']!r}")
            cit = str(rec.get("citation", "")).strip()
            if not cit:
                raise ValueError("ledger entries need a citation")
            out.append(LedgerEntry(str(rec["knot"]), int(rec["q"]), str(rec["orbit"]),
                                   Bound(op, Fraction(str(b["value"])), cit)))
        return cls(tuple(out))

    @classmethod
    def load(cls, path) -> "DLedger":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def lookup(self, knot: str, q: int, orbit: str) -> Bound:
        if knot in TRIVIAL_KNOTS:
            return Bound("=", Fraction(0), "trivial cover")
        for e in self.entries:
            if e.knot == knot and e.q == q and e.orbit == orbit:
                return e.bound
        raise MissingLedgerEntry(f"missing ledger entry for ({knot!r}, {q}, {orbit!r})")

    def to_json(self) -> list:
        return [e.to_json() for e in self.entries]


def ledger_lookup(ledger: DLedger, key: Tuple[str, int, str]) -> Bound:
    return ledger.lookup(*key)


def shipped_ledger_path() -> str:
    from importlib.resources import files
    return str(files("knotcert").joinpath("data/d_ledger.json"))


def shipped_ledger() -> DLedger:
    return DLedger.load(shipped_ledger_path())
