"""Independent reference computations used by the tests."""

import json
from fractions import Fraction
from itertools import product
from pathlib import Path

import numpy as np

from knotcert.cover import cover_homology
from knotcert.forms import TorsionForm
from knotcert.knots import (DOUBLE_FORM, Companion, KnotExpr, SatelliteKnot, SeifertMatrix,
                            rn_model, rn_satellite)

ROOT = Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "docs" / "schemas"
KNOTS = ROOT / "demos" / "knots"

J_FORM = SeifertMatrix(((-1, 1), (0, 5)))


def single_knot():
    """R(D, J): D on the alpha band, J (d-neutral) on the beta band."""
    return rn_satellite(1, Companion(0, DOUBLE_FORM, "D"), Companion(0, J_FORM, "J", True))


def double_summand():
    return KnotExpr.of(SatelliteKnot(DOUBLE_FORM, label="Wh"))


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def has_float(obj):
    if isinstance(obj, float):
        return True
    if isinstance(obj, dict):
        return any(has_float(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return any(has_float(v) for v in obj)
    return False


def lt_numeric(v, r):
    """Oracle: signature of (1-w)V + (1-conj w)V^T via numpy eigenvalues."""
    a = np.array(v.tolist(), dtype=complex)
    if a.size == 0:
        return 0
    w = np.exp(2j * np.pi * float(r))
    m = (1 - w) * a + (1 - np.conj(w)) * a.T
    ev = np.linalg.eigvalsh(m)
    tol = 1e-9 * max(1.0, np.abs(ev).max())
    assert np.all(np.abs(ev) > tol), "oracle evaluated at a singular point"
    return int(np.sum(ev > 0) - np.sum(ev < 0))


def det_fraction(a):
    """Determinant by Gaussian elimination over Q."""
    m = [[Fraction(x) for x in row] for row in a]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(d)


def invariant_factors_minors(a):
    """Nontrivial invariant factors from gcds of k x k minors."""
    from itertools import combinations
    from math import gcd
    n = len(a)
    dk = [1]
    for k in range(1, n + 1):
        g = 0
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                g = gcd(g, det_fraction([[a[i][j] for j in cols] for i in rows]))
        dk.append(g)
    facs = [dk[k] // dk[k - 1] for k in range(1, n + 1) if dk[k - 1]]
    return [abs(x) for x in facs if abs(x) != 1]


def alexander_sympy(v):
    """Coefficients of det(V - t V^T), lowest first, normalized like the library."""
    import sympy
    t = sympy.symbols("t")
    m = sympy.Matrix(v.tolist())
    if m.shape[0] == 0:
        return (1,)
    poly = sympy.Poly(sympy.expand((m - t * m.T).det()), t)
    c = [int(x) for x in reversed(poly.all_coeffs())]
    while c and c[-1] == 0:
        c.pop()
    while c and c[0] == 0:
        c.pop(0)
    if c and c[0] < 0:
        c = [-x for x in c]
    return tuple(c) or (0,)


def root_product_numeric(coeffs, q):
    z = np.exp(2j * np.pi * np.arange(1, q) / q)
    vals = np.polyval(list(reversed(coeffs)), z)
    return int(round(np.prod(vals).real))


def lagrangian_count(gram, p):
    """Lagrangian planes of a nondegenerate 4-dimensional form over F_p:
    ordered bases (u, v) of isotropic orthogonal independent vectors, divided
    by |GL_2(F_p)|."""
    g = np.array(gram, dtype=np.int64) % p
    pts = np.array(list(product(range(p), repeat=4)), dtype=np.int64)
    pts = pts[1:]
    iso = pts[np.einsum("ij,jk,ik->i", pts, g, pts) % p == 0]
    gl2 = (p * p - 1) * (p * p - p)
    total = 0
    gi = iso @ g % p
    for u in iso:
        orth = iso[(gi @ u) % p == 0]
        # independent of u: not a scalar multiple
        mults = np.array([(c * u) % p for c in range(p)])
        dep = (orth[:, None, :] == mults[None, :, :]).all(axis=2).any(axis=1)
        total += int((~dep).sum())
    assert total % gl2 == 0
    return total // gl2


def diag_form(facs, units):
    k = len(facs)
    return TorsionForm(list(facs), [[Fraction(units[i], facs[i]) if i == j else Fraction(0)
                                     for j in range(k)] for i in range(k)])


def hyperbolic(n):
    return TorsionForm([n, n], [[Fraction(0), Fraction(1, n)], [Fraction(1, n), Fraction(0)]])


def harness_forms():
    """Nonsingular linking forms on groups of square order <= 625."""
    out = []
    for n in (4, 9, 25, 49, 81, 121, 169, 225, 289, 361, 441, 529, 625):
        for u in (1, 2, 3):
            if n % 2 == 0 and u % 2 == 0 or n % u == 0 and u > 1:
                continue
            out.append((f"Z{n}<{u}>", diag_form([n], [u])))
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        for u in ((1, 1), (1, 2), (1, p - 1)):
            out.append((f"Z{p}^2<{u}>", diag_form([p, p], u)))
    for p in (3, 5):
        for u in ((1, 1, 1, 1), (1, 1, 1, 2), (1, 2, 1, 2), (1, 1, 2, 2)):
            out.append((f"Z{p}^4<{u}>", diag_form([p] * 4, u)))
    out += [
        ("H9", hyperbolic(9)), ("H25", hyperbolic(25)), ("H15", hyperbolic(15)),
        ("Z27+Z3", diag_form([3, 27], [1, 1])), ("Z27+Z3'", diag_form([3, 27], [2, 1])),
        ("Z125+Z5", diag_form([5, 125], [1, 1])), ("Z125+Z5'", diag_form([5, 125], [1, 2])),
        ("Z9+Z3+Z3", diag_form([3, 3, 9], [1, 2, 1])), ("Z25+Z5+Z5", diag_form([5, 5, 25], [1, 1, 2])),
        ("Z9+Z9", diag_form([9, 9], [1, 2])), ("Z3+Z3+Z5+Z5", diag_form([3, 3, 5, 5], [1, 1, 1, 2])),
        ("cover R_1 x2 at q=3", cover_homology(rn_model(1), 3)),
    ]
    return out
