import time
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from knotcert.cover import cover_homology, labeled_generators
from knotcert.forms import TorsionForm, form_from_symmetric
from knotcert.knots import rn_model
from knotcert.metabolizer import (BudgetExceeded, MetabolizerError, brute_force_metabolizers,
                                  classify, enumerate_metabolizers, equivariant_filter,
                                  equivariant_metabolizers, equivariant_metabolizers_direct,
                                  frame_from_generators, mixed_variant)
from oracles import diag_form, harness_forms, lagrangian_count


@pytest.mark.parametrize("name,form", harness_forms(), ids=[n for n, _ in harness_forms()])
def test_enumerator_matches_brute_force(name, form):
    fast = sorted((frozenset(m.elements(form)) for m in enumerate_metabolizers(form)),
                  key=lambda s: sorted(s))
    assert fast == brute_force_metabolizers(form)


@given(st.integers(-12, 12), st.integers(-12, 12), st.integers(-12, 12))
def test_random_symmetric_forms_match_brute_force(a, b, c):
    det = a * c - b * b
    if det == 0 or abs(det) > 625:
        return
    form = form_from_symmetric([[a, b], [b, c]])
    assert form.is_symmetric() and form.is_nonsingular()
    if round(abs(det) ** 0.5) ** 2 != abs(det):
        with pytest.raises(MetabolizerError):
            enumerate_metabolizers(form)
        return
    fast = sorted((frozenset(m.elements(form)) for m in enumerate_metabolizers(form)),
                  key=lambda s: sorted(s))
    assert fast == brute_force_metabolizers(form)


def gram(h, p):
    return [[int(x * p) % p for x in row] for row in h.linking]


def test_k1_difference_counts(k1_diff):
    h = cover_homology(k1_diff.matrix, 3)
    t = time.perf_counter()
    ms = enumerate_metabolizers(h)
    assert time.perf_counter() - t < 10
    assert len(ms) == lagrangian_count(gram(h, 7), 7) == 16
    eq = equivariant_metabolizers_direct(h)[7]
    assert len(eq) == 10
    assert sorted(m.key for m in equivariant_filter(ms, h)) == sorted(m.key for m in eq)
    assert len(equivariant_metabolizers(h)) == 10


def test_k1_classification(k1_diff):
    h = cover_homology(k1_diff.matrix, 3)
    frame = frame_from_generators(labeled_generators(k1_diff, 3, 7, h), 7)
    tags = [classify(m, h, frame) for m in equivariant_metabolizers_direct(h)[7]]
    kinds = sorted(t for t, _ in tags)
    assert kinds.count("pure-2-eigenspace") == 1
    assert kinds.count("pure-4-eigenspace") == 1
    assert kinds.count("mixed-pure-pair") == 2
    assert sorted(r for t, r in tags if t == "graph-type") == [1, 2, 3, 4, 5, 6]
    variants = sorted(v for m in equivariant_metabolizers_direct(h)[7]
                      if (v := mixed_variant(m, h, frame)))
    assert variants == ["alpha", "beta"]


def test_budget_and_square_checks():
    with pytest.raises(BudgetExceeded):
        enumerate_metabolizers(diag_form([5] * 4, (1, 1, 1, 1)), budget=3)
    with pytest.raises(MetabolizerError):
        enumerate_metabolizers(diag_form([7], [1]))


def test_trivial_group_has_one_metabolizer():
    ms = enumerate_metabolizers(TorsionForm([], []))
    assert len(ms) == 1 and ms[0].order == 1


def test_worker_count_does_not_change_output(k1_diff):
    h = cover_homology(k1_diff.matrix, 3)
    a = [m.to_json() for m in enumerate_metabolizers(h, workers=1)]
    b = [m.to_json() for m in enumerate_metabolizers(h, workers=2)]
    assert a == b
