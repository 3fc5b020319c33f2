import random
from math import gcd, prod

import pytest
import sympy
from hypothesis import given, strategies as st

from knotcert.primegen import (FamilyElement, PrimePairFamily, SearchExhausted, certified_prime,
                               f, factor_semiprime_check, factorize, family_from_jsonl, g_poly,
                               generate_family, is_prime, mod2_roots, multiplicative_order,
                               next_family_element, pocklington_certify)


def test_is_prime_small_range():
    assert [n for n in range(200) if is_prime(n)] == list(sympy.primerange(0, 200))


@given(st.integers(2, 10 ** 30))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_known_hard_cases():
    # strong pseudoprimes to several bases, Carmichael numbers, a large prime
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321,
              3825123056546413051, 561, 41041, 825265):
        assert not is_prime(n)
    assert is_prime(2 ** 127 - 1) and is_prime(2 ** 89 - 1)
    assert certified_prime(2 ** 127 - 1)


@given(st.integers(2, 10 ** 15))
def test_factorize_product_and_primality(n):
    fac = factorize(n)
    assert prod(p ** e for p, e in fac.items()) == n
    assert fac == sympy.factorint(n)


@given(st.integers(2, 500), st.sampled_from([7, 13, 127, 1000]))
def test_multiplicative_order_brute_force(a, d):
    if gcd(a, d) != 1:
        with pytest.raises(ValueError):
            multiplicative_order(a, d)
        return
    k, x = 1, a % d
    while x != 1:
        x = x * a % d
        k += 1
    assert multiplicative_order(a, d) == k


def test_pocklington():
    p = 2 ** 61 - 1
    assert pocklington_certify(p, factorize(p - 1))
    assert not pocklington_certify(561, factorize(560))


def test_factor_semiprime_check_examples():
    assert factor_semiprime_check(7) == (7, 1)
    assert factor_semiprime_check(49) is None
    assert factor_semiprime_check(1261) == (13, 97)
    assert factor_semiprime_check(3 * 5 * 7) is None
    assert factor_semiprime_check((2 ** 61 - 1) * (2 ** 31 - 1)) == (2 ** 31 - 1, 2 ** 61 - 1)


@given(st.integers(2, 10 ** 12))
def test_factor_semiprime_check_oracle(v):
    fac = sympy.factorint(v)
    expect = None
    if all(e == 1 for e in fac.values()) and len(fac) <= 2:
        ps = sorted(fac)
        expect = (ps[0], 1) if len(ps) == 1 else tuple(ps)
    assert factor_semiprime_check(v) == expect


def test_g_poly_identity():
    for P in (1, 7, 889):
        for m in range(1, 6):
            assert f(P * m - 1) == g_poly(P, m)


@pytest.fixture(scope="module")
def fam4():
    return generate_family(4)


def test_family_prefix(fam4):
    assert fam4.triples()[:3] == [(1, 7, 1), (6, 127, 1), (888, 2368297, 1)]
    fam4.validate()


def test_family_invariants(fam4):
    P = 1
    for e in fam4.elements:
        assert e.P_before == P
        if e.n != 1:
            assert e.n == P * e.m0 - 1
        assert f(e.n) == e.p * e.q
        for x in (e.p, e.q):
            if x != 1:
                assert sympy.isprime(x) and gcd(x, P) == 1
        P *= e.p * e.q


def test_family_minimality(fam4):
    """No smaller m gives a prime or squarefree two-prime value with fresh primes."""
    used = set()
    for e in fam4.elements:
        if e.n != 1:
            for m in range(1, e.m0):
                fac = sympy.factorint(g_poly(e.P_before, m))
                ok = all(x == 1 for x in fac.values()) and len(fac) <= 2 and not (set(fac) & used)
                assert not ok
        used |= {e.p, e.q} - {1}


def test_family_jsonl_round_trip(fam4):
    again = family_from_jsonl(fam4.to_jsonl())
    assert again.triples() == fam4.triples()
    assert [e.to_json() for e in again.elements] == [e.to_json() for e in fam4.elements]


def test_family_workers_agree():
    assert generate_family(5, workers=2).to_jsonl() == generate_family(5).to_jsonl()


def test_validate_rejects_bad_family():
    bad = PrimePairFamily([FamilyElement(1, 7, 1, 0, 1), FamilyElement(6, 127, 1, 1, 1)])
    with pytest.raises(AssertionError):
        bad.validate()
    with pytest.raises(AssertionError):
        PrimePairFamily([FamilyElement(2, 19, 1, 0, 1)]).validate()


def test_scan_bound_exhaustion():
    fam = generate_family(2)
    with pytest.raises(SearchExhausted):
        next_family_element(PrimePairFamily(list(fam.elements) + [next_family_element(fam)]),
                            scan_bound=0)


def test_validate_in_fresh_process():
    import subprocess, sys
    text = generate_family(5).to_jsonl()
    code = ("import sys; from knotcert.primegen import family_from_jsonl as F; "
            "F(sys.stdin.read()).validate()")
    subprocess.run([sys.executable, "-c", code], input=text, text=True, check=True)


@given(st.integers(-10 ** 12, 10 ** 12))
def test_f_is_odd(n):
    assert f(n) % 2 == 1


@given(st.integers(1, 10 ** 30).map(lambda x: 2 * x + 1))
def test_g_mod_2(P):
    # g(m) = m^2 + m + 1 mod 2 for odd P, which has no root
    assert mod2_roots(P) == []
    assert all(g_poly(P, m) % 2 == (m * m + m + 1) % 2 for m in range(4))


def test_family_prefix_property(fam4):
    assert generate_family(3).triples() == fam4.triples()[:3]
    assert generate_family(1).triples() == [(1, 7, 1)]
