"""Seifert-matrix algebra: knots as Seifert forms, formal knot sums, and
Alexander polynomial arithmetic.

Conventions (matrix level):

* reverse(V)  = V^T
* mirror(V)   = -V^T
* negate(V)   = -V            (the concordance inverse, mirror of reverse)

so that ``-rho(K)`` is represented by ``-V^T``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import intmat


class KnotError(ValueError):
    """Invalid knot data (bad Seifert matrix, malformed description)."""


class InfiniteHomologyError(ArithmeticError):
    """The cover is not a rational homology sphere."""


# ---------------------------------------------------------------------------
# Seifert matrices

@dataclass(frozen=True)
class SeifertMatrix:
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise KnotError("Seifert matrix must be square")
        if n % 2:
            raise KnotError(f"Seifert matrix must have even size, got {n}")
        diff = [[rows[i][j] - rows[j][i] for j in range(n)] for i in range(n)]
        if abs(intmat.det(diff)) != 1:
            raise KnotError("V - V^T is not unimodular")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "SeifertMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def genus(self) -> int:
        return self.size // 2

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "SeifertMatrix":
        return SeifertMatrix(tuple(zip(*self.entries)) if self.entries else ())

    def __neg__(self) -> "SeifertMatrix":
        return SeifertMatrix(tuple(tuple(-x for x in r) for r in self.entries))

    def reverse(self) -> "SeifertMatrix":
        return self.transpose()

    def mirror(self) -> "SeifertMatrix":
        return -self.transpose()

    def __add__(self, other: "SeifertMatrix") -> "SeifertMatrix":
        """Block sum, the Seifert matrix of the connected sum."""
        return SeifertMatrix.of(intmat.block_diag(self.entries, other.entries))


UNKNOT = SeifertMatrix(())


def block_sum(*mats: SeifertMatrix) -> SeifertMatrix:
    return SeifertMatrix.of(intmat.block_diag(*(m.entries for m in mats)))


def rn_model(n: int) -> SeifertMatrix:
    """Genus-one Seifert form standing in for the two-band knot R_n.

    Rows (n, 0) and (1, -(n+1)); Alexander polynomial
    n(n+1)t^2 - (2n^2+2n+1)t + n(n+1) = (nt - (n+1))((n+1)t - n).
    """
    if n < 1:
        raise KnotError("rn_model needs n >= 1")
    return SeifertMatrix(((n, 0), (1, -(n + 1))))


def twist_knot_form(twists: int) -> SeifertMatrix:
    """Seifert form [[-1, 1], [0, t]] of the positively clasped t-twisted double
    of the unknot; t = -1 gives the trefoil's form, t = 0 an Alexander
    polynomial one form, t = 5 the companion J of the demo knot."""
    return SeifertMatrix(((-1, 1), (0, twists)))


TREFOIL_FORM = twist_knot_form(-1)
DOUBLE_FORM = twist_knot_form(0)


# ---------------------------------------------------------------------------
# Alexander polynomials

def _normalize(coeffs: Sequence[int]) -> Tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    k = 0
    while k < len(c) and c[k] == 0:
        k += 1
    c = c[k:]
    if not c:
        return (0,)
    if c[0] < 0:
        c = [-x for x in c]
    return tuple(c)


@dataclass(frozen=True)
class AlexanderPolynomial:
    """Integer polynomial, lowest degree first, normalized up to units +-t^k."""
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _normalize(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __mul__(self, other: "AlexanderPolynomial") -> "AlexanderPolynomial":
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return AlexanderPolynomial(tuple(out))

    def is_trivial(self) -> bool:
        return self.coeffs == (1,)

    def is_palindromic(self) -> bool:
        c = self.coeffs
        return c == c[::-1] or c == tuple(-x for x in c[::-1])

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            mag = abs(c)
            body = (str(mag) if (mag != 1 or not mono) else "") + mono
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def alexander(v: SeifertMatrix) -> AlexanderPolynomial:
    """det(V - t V^T), normalized.

    The determinant has degree <= 2g, so it is recovered exactly from its
    values at t = 0..2g by Newton interpolation.
    """
    n = v.size
    if n == 0:
        return AlexanderPolynomial((1,))
    a = v.tolist()
    at = intmat.transpose(a)
    pts = list(range(n + 1))
    vals = [intmat.det([[a[i][j] - t * at[i][j] for j in range(n)] for i in range(n)])
            for t in pts]
    # Newton divided differences on integer nodes
    dd = [Fraction(x) for x in vals]
    coef = [dd[0]]
    for k in range(1, n + 1):
        dd = [(dd[i + 1] - dd[i]) / k for i in range(len(dd) - 1)]
        coef.append(dd[0])
    poly = [Fraction(0)] * (n + 1)
    basis = [Fraction(1)]  # prod_{i<k} (t - i)
    for k, c in enumerate(coef):
        for i, b in enumerate(basis):
            poly[i] += c * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b
            nxt[i] -= k * b
        basis = nxt
    assert all(c.denominator == 1 for c in poly)
    return AlexanderPolynomial(tuple(int(c) for c in poly))


def root_product(p: AlexanderPolynomial, q: int) -> int:
    """prod_{k=1}^{q-1} p(exp(2 pi i k / q)), exactly.

    Computed as the resultant of p with 1 + t + ... + t^{q-1}: the
    determinant of multiplication by p on Z[t]/(1 + t + ... + t^{q-1}).
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    d = q - 1
    cols = []
    for j in range(d):
        r = [0] * q
        for i, c in enumerate(p.coeffs):
            r[(i + j) % q] += c
        top = r[q - 1]
        col = [r[i] - top for i in range(d)]
        cols.append(col)
    val = intmat.det(intmat.transpose(cols))
    if val == 0:
        raise InfiniteHomologyError(f"Alexander polynomial vanishes at a {q}-th root of unity")
    return val


# ---------------------------------------------------------------------------
# Satellites and formal knot expressions

@dataclass(frozen=True)
class Companion:
    """Knot tied (0-framed) into the band dual to homology generator ``index``.

    ``d_neutral`` records an external fact: replacing this companion by the
    unknot leaves the d-invariants of the cover unchanged.
    """
    index: int
    matrix: SeifertMatrix
    label: str = "J"
    d_neutral: bool = False


@dataclass(frozen=True)
class SatelliteKnot:
    pattern: SeifertMatrix
    companions: Tuple[Companion, ...] = ()
    label: str = "K"
    # generator index -> rational root of the pattern's Alexander polynomial
    # whose deck eigenvalue labels that generator
    generator_roots: Tuple[Tuple[int, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "companions", tuple(self.companions))
        object.__setattr__(self, "generator_roots",
                           tuple((int(i), Fraction(r)) for i, r in self.generator_roots))
        for c in self.companions:
            if not 0 <= c.index < self.pattern.size:
                raise KnotError(f"companion index {c.index} out of range")
        for i, _ in self.generator_roots:
            if not 0 <= i < self.pattern.size:
                raise KnotError(f"generator index {i} out of range")

    @property
    def name(self) -> str:
        if not self.companions:
            return self.label
        return f"{self.label}({','.join(c.label for c in self.companions)})"

    @property
    def d_name(self) -> str:
        """Name under which d-invariant data of the cover are ledgered."""
        if not self.companions:
            return self.label
        labels = ["U" if c.d_neutral else c.label for c in self.companions]
        return f"{self.label}({','.join(labels)})"

    def companion(self, index: int) -> Optional[Companion]:
        for c in self.companions:
            if c.index == index:
                return c
        return None

    @property
    def roots(self) -> Dict[int, Fraction]:
        return dict(self.generator_roots)


def rn_satellite(n: int, j_alpha: Optional[Companion] = None,
                 j_beta: Optional[Companion] = None, label: Optional[str] = None) -> SatelliteKnot:
    """R_n(J_alpha, J_beta) on the rn_model pattern.

    Generator 0 (alpha-tilde) carries the deck eigenvalue (n+1)/n and
    generator 1 (beta-tilde) the eigenvalue n/(n+1). J_alpha sits in the alpha
    band, which characters along beta-tilde detect, hence index 1; J_beta gets
    index 0. Only the ``matrix``, ``label`` and ``d_neutral`` fields of the
    supplied companions are used.
    """
    comps = []
    if j_alpha is not None:
        comps.append(Companion(1, j_alpha.matrix, j_alpha.label, j_alpha.d_neutral))
    if j_beta is not None:
        comps.append(Companion(0, j_beta.matrix, j_beta.label, j_beta.d_neutral))
    return SatelliteKnot(
        rn_model(n), tuple(comps), label or ("R" if n == 1 else f"R_{n}"),
        ((0, Fraction(n + 1, n)), (1, Fraction(n, n + 1))))


@dataclass(frozen=True)
class KnotTerm:
    knot: SatelliteKnot
    reversed: bool = False
    mirrored: bool = False

    @property
    def transposed(self) -> bool:
        return self.reversed != self.mirrored

    def orient(self, v: SeifertMatrix) -> SeifertMatrix:
        w = v.transpose() if self.transposed else v
        return -w if self.mirrored else w

    @property
    def matrix(self) -> SeifertMatrix:
        return self.orient(self.knot.pattern)

    def companion_matrix(self, c: Companion) -> SeifertMatrix:
        return self.orient(c.matrix)

    @property
    def name(self) -> str:
        n = self.knot.name
        if self.reversed and self.mirrored:
            return f"-{n}"
        if self.reversed:
            return f"rho({n})"
        if self.mirrored:
            return f"-rho({n})"
        return n


@dataclass(frozen=True)
class KnotExpr:
    """Formal connected sum of oriented satellite terms."""
    terms: Tuple[KnotTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    @classmethod
    def of(cls, knot, reversed: bool = False, mirrored: bool = False) -> "KnotExpr":
        if isinstance(knot, SeifertMatrix):
            knot = SatelliteKnot(knot)
        return cls((KnotTerm(knot, reversed, mirrored),))

    @property
    def matrix(self) -> SeifertMatrix:
        return block_sum(*(t.matrix for t in self.terms))

    @property
    def name(self) -> str:
        return " # ".join(t.name for t in self.terms) if self.terms else "U"

    def __add__(self, other: "KnotExpr") -> "KnotExpr":
        return KnotExpr(self.terms + other.terms)

    def reverse(self) -> "KnotExpr":
        return KnotExpr(tuple(KnotTerm(t.knot, not t.reversed, t.mirrored) for t in self.terms))

    def mirror(self) -> "KnotExpr":
        return KnotExpr(tuple(KnotTerm(t.knot, t.reversed, not t.mirrored) for t in self.terms))

    def __neg__(self) -> "KnotExpr":
        return KnotExpr(tuple(KnotTerm(t.knot, not t.reversed, not t.mirrored)
                              for t in self.terms))

    def __mul__(self, a: int) -> "KnotExpr":
        base = self if a >= 0 else -self
        return KnotExpr(base.terms * abs(a))

    __rmul__ = __mul__


def knot_op(e: KnotExpr, op: str, other: Optional[KnotExpr] = None) -> KnotExpr:
    if op == "reverse":
        return e.reverse()
    if op == "mirror":
        return e.mirror()
    if op == "negate":
        return -e
    if op == "sum":
        if other is None:
            raise ValueError("sum needs a second expression")
        return e + other
    raise ValueError(f"unknown knot operation {op!r}")


def connected_sum(*exprs: KnotExpr) -> KnotExpr:
    out = KnotExpr()
    for e in exprs:
        out = out + e
    return out


def difference_with_reverse(k: SatelliteKnot) -> KnotExpr:
    """K # -rho(K)."""
    e = KnotExpr.of(k)
    return e + (-e.reverse())


# ---------------------------------------------------------------------------
# JSON

def knot_to_json(k: SatelliteKnot) -> dict:
    d = {"label": k.label, "pattern": k.pattern.tolist(),
         "companions": [{"index": c.index, "matrix": c.matrix.tolist(), "label": c.label,
                         **({"d_neutral": True} if c.d_neutral else {})}
                        for c in k.companions]}
    if k.generator_roots:
        d["generator_roots"] = {str(i): f"{r.numerator}/{r.denominator}"
                                for i, r in k.generator_roots}
    return d


def knot_from_json(d: Mapping) -> SatelliteKnot:
    try:
        pattern = SeifertMatrix.of(d["pattern"])
        comps = tuple(Companion(int(c["index"]), SeifertMatrix.of(c["matrix"]),
                                str(c.get("label", "J")), bool(c.get("d_neutral", False)))
                      for c in d.get("companions", []))
        roots = tuple((int(i), Fraction(r)) for i, r in d.get("generator_roots", {}).items())
        return SatelliteKnot(pattern, comps, str(d.get("label", "K")), roots)
    except (KeyError, TypeError) as exc:
        raise KnotError(f"malformed knot description: {exc}") from exc


def expr_to_json(e: KnotExpr) -> list:
    return [{"reversed": t.reversed, "mirrored": t.mirrored, "knot": knot_to_json(t.knot)}
            for t in e.terms]


def expr_from_json(data) -> KnotExpr:
    """Accepts a single knot record or a list of term records.

    A term record is either a knot description with optional
    ``reversed``/``mirrored``/``sign`` keys, or ``{"knot": {...}, ...flags}``.
    """
    if isinstance(data, Mapping):
        data = [data]
    terms: List[KnotTerm] = []
    for rec in data:
        knot = knot_from_json(rec["knot"] if "knot" in rec else rec)
        t = KnotExpr.of(knot, bool(rec.get("reversed", False)), bool(rec.get("mirrored", False)))
        if int(rec.get("sign", 1)) < 0:
            t = -t
        terms.extend(t.terms)
    return KnotExpr(tuple(terms))
