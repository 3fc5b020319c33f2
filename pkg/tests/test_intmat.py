from fractions import Fraction

from hypothesis import given, strategies as st

from knotcert import intmat, modp
from oracles import det_fraction, invariant_factors_minors

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_bareiss_det_matches_rational_elimination(a):
    assert intmat.det(a) == det_fraction(a)


@given(st.integers(1, 4).flatmap(square))
def test_smith_form_transforms_and_divisibility(a):
    snf = intmat.smith_normal_form(a)
    n = len(a)
    d = [[snf.diagonal[i] if i == j else 0 for j in range(n)] for i in range(n)]
    assert intmat.matmul(intmat.matmul(snf.left, a), snf.right) == d
    assert intmat.matmul(snf.left, snf.left_inv) == intmat.identity(n)
    diag = [x for x in snf.diagonal if x]
    assert all(x > 0 for x in diag)
    assert all(diag[i + 1] % diag[i] == 0 for i in range(len(diag) - 1))


@given(st.integers(1, 3).flatmap(square))
def test_smith_form_matches_determinantal_divisors(a):
    if det_fraction(a) == 0:
        return
    got = [x for x in intmat.smith_normal_form(a).diagonal if x != 1]
    assert got == invariant_factors_minors(a)


@given(st.integers(1, 4).flatmap(square))
def test_rational_inverse(a):
    if det_fraction(a) == 0:
        return
    inv = intmat.inverse_rational(a)
    prod_ = intmat.matmul(a, inv)
    assert prod_ == [[Fraction(int(i == j)) for j in range(len(a))] for i in range(len(a))]


@given(st.lists(st.lists(st.integers(0, 6), min_size=4, max_size=4), min_size=1, max_size=5))
def test_nullspace_mod_p(rows):
    p = 7
    ns = modp.nullspace(rows, p)
    assert len(ns) + modp.rank(rows, p) == 4
    for v in ns:
        assert all(sum(r[i] * v[i] for i in range(4)) % p == 0 for r in rows)


def test_poly_roots_mod_p():
    # x^2 + x + 1 mod 7 has roots 2 and 4
    assert sorted(modp.poly_roots_mod([1, 1, 1], 7)) == [2, 4]
