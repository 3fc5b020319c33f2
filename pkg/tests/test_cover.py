from collections import Counter
from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, strategies as st

from knotcert.cover import (CoverError, cover_homology, cover_presentation, deck_eigenvalues,
                            eigenspaces, labeled_generators, prime_power_base)
from knotcert.forms import mod1
from knotcert.knots import (TREFOIL_FORM, AlexanderPolynomial, InfiniteHomologyError, KnotExpr, SeifertMatrix,
                            alexander, rn_model, root_product)
from oracles import J_FORM, invariant_factors_minors

forms_2x2 = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)).map(
    lambda t: SeifertMatrix(((t[0], t[1]), (t[1] - 1, t[2]))))


def finite_cover(v, q):
    try:
        return cover_homology(v, q)
    except InfiniteHomologyError:
        return None


def test_prime_power_base():
    assert [prime_power_base(q) for q in (2, 3, 9, 25, 6, 1)] == [2, 3, 3, 5, None, None]


def test_presentation_shape():
    pres = cover_presentation(rn_model(1), 3)
    assert len(pres.matrix) == 6 and pres.labels[:2] == [(0, 0), (0, 1)]


def test_rn_model_1_cover():
    h = cover_homology(rn_model(1), 3)
    assert h.invariant_factors == [7, 7]
    assert sorted(deck_eigenvalues(h, 7)) == [2, 4]


@pytest.mark.parametrize("n", range(1, 13))
def test_rn_model_cover_order(n):
    h = cover_homology(rn_model(n), 3)
    m = 3 * n * n + 3 * n + 1
    assert h.invariant_factors == [m, m]


@given(forms_2x2, st.sampled_from([3, 5, 9]))
def test_cover_structure(v, q):
    h = finite_cover(v, q)
    if h is None:
        return
    assert h.order == abs(root_product(alexander(v), q))
    assert h.is_symmetric() and h.is_nonsingular()
    if h.order > 500:
        return
    for x in h.elements():
        assert h.deck(x, q) == h.reduce(x)
        s = h.zero
        y = x
        for _ in range(q):
            s = h.add(s, y)
            y = h.deck(y)
        assert s == h.zero
        for y in list(h.elements())[:20]:
            assert h.lk(h.deck(x), h.deck(y)) == h.lk(x, y)


@given(forms_2x2)
def test_invariant_factors_match_minors(v):
    h = finite_cover(v, 3)
    if h is None:
        return
    pres = cover_presentation(v, 3)
    assert h.invariant_factors == invariant_factors_minors(pres.matrix)


@given(forms_2x2)
def test_mirror_negates_linking(v):
    h = finite_cover(v, 3)
    if h is None:
        return
    hm = cover_homology(-v, 3)
    assert hm.invariant_factors == h.invariant_factors
    assert hm.linking == [[mod1(-x) for x in row] for row in h.linking]


def _distribution(h):
    return Counter((h.element_order(x), h.lk(x, x)) for x in h.elements())


def _convolve(d1, d2):
    out = Counter()
    for (o1, l1), c1 in d1.items():
        for (o2, l2), c2 in d2.items():
            out[(lcm(o1, o2), mod1(l1 + l2))] += c1 * c2
    return out


@given(forms_2x2, forms_2x2)
def test_connected_sum_additivity(a, b):
    ha, hb = finite_cover(a, 3), finite_cover(b, 3)
    if ha is None or hb is None or ha.order * hb.order > 1500 or ha.order > 200 or hb.order > 200:
        return
    hab = cover_homology(a + b, 3)
    assert hab.order == ha.order * hb.order
    assert _distribution(hab) == _convolve(_distribution(ha), _distribution(hb))


def test_eigenspaces_and_errors():
    h = cover_homology(rn_model(1), 3)
    sp = dict(eigenspaces(h, 7))
    for lam, basis in sp.items():
        for v in basis:
            assert h.deck(v) == h.mul(lam, v)
    with pytest.raises(CoverError):
        eigenspaces(h, 5)
    with pytest.raises(CoverError):
        cover_homology(TREFOIL_FORM, 6)
    with pytest.raises(InfiniteHomologyError):
        root_product(AlexanderPolynomial((1, 1, 1)), 3)


def test_labeled_generators(k1_diff):
    h = cover_homology(k1_diff.matrix, 3)
    gens = labeled_generators(k1_diff, 3, 7, h)
    by = {g.name: g for g in gens}
    assert {g: by[g].eigenvalue for g in by} == {"a0": 2, "b0": 4, "a1": 4, "b1": 2}
    assert all(g.own_eigenvalue == (2 if g.index == 0 else 4) for g in gens)
    assert h.lk(by["a0"].element, by["b0"].element) == Fraction(1, 7)
    assert h.lk(by["a1"].element, by["b1"].element) == Fraction(6, 7)
    assert h.lk(by["a0"].element, by["a1"].element) == 0


def test_terms_without_p_torsion_are_skipped():
    from knotcert.certify import combination_expr
    e = combination_expr({1: 1, 6: 1})
    gens = labeled_generators(e, 3, 127)
    assert sorted({g.term for g in gens}) == [2, 3]
    assert [g.name for g in gens] == ["a2", "b2", "a3", "b3"]
