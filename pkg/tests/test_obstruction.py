import json
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from knotcert.knots import (DOUBLE_FORM, TREFOIL_FORM, AlexanderPolynomial, SeifertMatrix,
                            alexander, block_sum, rn_model)
from knotcert.obstruction import (Bound, CGSignatureQuery, DLedger, MissingLedgerEntry,
                                  SingularAtRoot, bounds_exclude_zero, cyclotomic, discriminant,
                                  exists_negative_b, fold, is_d_norm, levine_tristram,
                                  shipped_ledger, signature_profile, signature_sum)
from knotcert.primegen import factorize, multiplicative_order
from oracles import J_FORM, lt_numeric, schema

forms_2x2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)).map(
    lambda t: SeifertMatrix(((t[0], t[1]), (t[1] - 1, t[2]))))
forms = st.lists(forms_2x2, min_size=1, max_size=2).map(lambda ms: block_sum(*ms))
rationals = st.builds(Fraction, st.integers(1, 60), st.integers(2, 61)).filter(lambda r: 0 < r < 1)


def regular(v, r):
    try:
        return levine_tristram(v, r)
    except SingularAtRoot:
        return None


def test_cyclotomic_polynomials():
    assert cyclotomic(1) == (-1, 1)
    assert cyclotomic(6) == (1, -1, 1)
    assert cyclotomic(12) == (1, 0, -1, 0, 1)
    assert cyclotomic(7) == (1,) * 7


def test_trefoil_values():
    assert levine_tristram(TREFOIL_FORM, Fraction(1, 7)) == 0
    assert levine_tristram(TREFOIL_FORM, Fraction(3, 7)) == -2
    assert levine_tristram(TREFOIL_FORM, Fraction(1, 2)) == -2
    with pytest.raises(SingularAtRoot, match="singular at root"):
        levine_tristram(TREFOIL_FORM, Fraction(1, 6))
    with pytest.raises(ValueError):
        levine_tristram(TREFOIL_FORM, 0)


def test_trefoil_jump_is_at_the_root_of_its_alexander_polynomial():
    # t^2 - t + 1 vanishes at exp(2 pi i / 6)
    assert levine_tristram(TREFOIL_FORM, Fraction(1, 6) - Fraction(1, 1000)) == 0
    assert levine_tristram(TREFOIL_FORM, Fraction(1, 6) + Fraction(1, 1000)) == -2


@given(forms, rationals)
def test_matches_numeric_eigenvalues(v, r):
    s = regular(v, r)
    assume(s is not None)
    assert s == lt_numeric(v, r)


@given(forms, rationals)
def test_evenness_and_symmetry(v, r):
    s = regular(v, r)
    assume(s is not None)
    assert s % 2 == 0
    assert s == levine_tristram(v, 1 - r)


@given(forms, rationals)
def test_mirror_negates_and_reversal_preserves(v, r):
    s = regular(v, r)
    assume(s is not None)
    assert levine_tristram(-v, r) == -s
    assert levine_tristram(v.transpose(), r) == s


@given(forms_2x2, forms_2x2, rationals)
def test_additive_under_block_sum(a, b, r):
    sa, sb = regular(a, r), regular(b, r)
    assume(sa is not None and sb is not None)
    assert levine_tristram(a + b, r) == sa + sb


def test_zero_signature_form_and_profile():
    assert all(s == 0 for _, s in signature_profile(DOUBLE_FORM))
    prof = dict(signature_profile(TREFOIL_FORM, [Fraction(1, 6), Fraction(1, 3)]))
    assert prof == {"1/6": None, "1/3": -2}


def test_signature_sum_values():
    q = CGSignatureQuery(TREFOIL_FORM, 7, 2, 1)
    assert signature_sum(q) == -4
    assert signature_sum(CGSignatureQuery(TREFOIL_FORM, 7, 2, 1, 0)) == 0
    assert all(signature_sum(CGSignatureQuery(TREFOIL_FORM, 7, 2, b)) < 0 for b in range(1, 7))
    with pytest.raises(ValueError):
        CGSignatureQuery(TREFOIL_FORM, 7, 3, 1)
    with pytest.raises(ValueError):
        CGSignatureQuery(TREFOIL_FORM, 7, 2, 7)
    assert fold(Fraction(4, 7)) == Fraction(3, 7)


def test_signature_sum_against_numeric_oracle():
    for b in range(1, 7):
        orbit = [b % 7, 2 * b % 7, 4 * b % 7]
        expect = sum(lt_numeric(TREFOIL_FORM, Fraction(x, 7)) for x in orbit)
        assert signature_sum(CGSignatureQuery(TREFOIL_FORM, 7, 2, b)) == expect


def test_exists_negative_b():
    assert exists_negative_b(TREFOIL_FORM, 7, 2) == 1
    c = 7 * pow(6, -1, 127) % 127
    assert exists_negative_b(TREFOIL_FORM, 127, c) is not None
    assert exists_negative_b(DOUBLE_FORM, 7, 2) is None


def test_discriminant_examples():
    d = discriminant(alexander(J_FORM), 7)
    assert d.value == 1261 and d.product == 1261 ** 2
    assert discriminant(AlexanderPolynomial((1,)), 5).value == 1
    assert discriminant(AlexanderPolynomial((2, -5, 2)), 3).value == 7


def _dnorm_oracle(n, d):
    for p, e in factorize(n).items():
        if e % 2 and p % d and multiplicative_order(p, d) % 2 == 0:
            return False
    return True


def test_d_norm_examples():
    c = is_d_norm(1261, 7)
    assert not c.verdict and c.witness == (13, 1, 2)
    assert is_d_norm(1, 7).verdict
    assert is_d_norm(13 * 13, 7).verdict
    assert is_d_norm(7 * 13, 7).verdict is False
    with pytest.raises(ValueError):
        is_d_norm(0, 7)


@given(st.integers(1, 10 ** 6), st.sampled_from([3, 5, 7, 13]))
def test_d_norm_matches_oracle(n, d):
    assert is_d_norm(n, d).verdict == _dnorm_oracle(n, d)


def test_bounds_algebra():
    le = Bound("<=", Fraction(-3, 2), "x")
    ge = le.negate()
    z = Bound("=", Fraction(0), "")
    assert bounds_exclude_zero([le, z])
    assert not bounds_exclude_zero([le, ge])
    assert bounds_exclude_zero([Bound("<", Fraction(0))])
    assert not bounds_exclude_zero([Bound("<=", Fraction(0))])
    assert bounds_exclude_zero([Bound("!=", Fraction(0)), z])
    assert not bounds_exclude_zero([Bound("!=", Fraction(0)), le])
    assert bounds_exclude_zero([Bound(">", Fraction(1)), Bound(">=", Fraction(-1))])
    with pytest.raises(ValueError):
        Bound("~", Fraction(0))


def test_ledger_parsing_and_lookup(tmp_path):
    data = [{"knot": "X", "q": 3, "orbit": "2-eigenspace orbit",
             "bound": {"op": "≤", "value": "-1/2"}, "citation": "ref"}]
    p = tmp_path / "l.json"
    p.write_text(json.dumps(data))
    led = DLedger.load(p)
    assert led.lookup("X", 3, "2-eigenspace orbit") == Bound("<=", Fraction(-1, 2), "ref")
    assert led.lookup("U", 3, "anything").op == "="
    with pytest.raises(MissingLedgerEntry):
        led.lookup("X", 5, "2-eigenspace orbit")
    with pytest.raises(ValueError):
        DLedger.from_json([{**data[0], "citation": ""}])


def test_shipped_ledger_is_valid():
    import jsonschema
    led = shipped_ledger()
    jsonschema.validate(led.to_json(), schema("ledger"))
    assert all(e.bound.citation for e in led.entries)
    assert led.lookup("R(D,U)", 3, "4-eigenspace orbit") == Bound("<=", Fraction(-3, 2),
                                                                  led.entries[0].bound.citation)
