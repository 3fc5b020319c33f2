"""Primality, factorization, and the search for n with 3n^2 + 3n + 1 a
product of at most two new primes.

Primality: deterministic Miller-Rabin below 3.3e24 (fixed prime bases),
Baillie-PSW above, and a Pocklington certificate for every prime value the
family search accepts. Factoring: trial division by small primes, then
Brent's variant of Pollard rho.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import gmpy2

SMALL_PRIME_LIMIT = 10 ** 6
DEFAULT_SCAN_BOUND = 10 ** 6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BELOW = 3317044064679887385961981


class SearchExhausted(RuntimeError):
    pass


def _sieve(n: int) -> List[int]:
    flags = bytearray([1]) * (n + 1)
    flags[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(flags[i * i::i]))
    return [i for i, f in enumerate(flags) if f]


_SMALL_PRIMES: Optional[List[int]] = None


def small_primes() -> List[int]:
    global _SMALL_PRIMES
    if _SMALL_PRIMES is None:
        _SMALL_PRIMES = _sieve(SMALL_PRIME_LIMIT)
    return _SMALL_PRIMES


def _miller_rabin(n: int, bases: Sequence[int]) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    nn = gmpy2.mpz(n)
    for a in bases:
        if a % n == 0:
            continue
        x = gmpy2.powmod(a, d, nn)
        if x == 1 or x == nn - 1:
            continue
        for _ in range(s - 1):
            x = gmpy2.powmod(x, 2, nn)
            if x == nn - 1:
                break
        else:
            return False
    return True


def is_probable_prime(n: int) -> bool:
    """Deterministic below 3.3e24; Baillie-PSW (no known counterexample) above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < _MR_DETERMINISTIC_BELOW:
        return _miller_rabin(n, _MR_BASES)
    # a single base-2 test rejects almost every composite at a third of the cost
    return bool(gmpy2.is_strong_prp(n, 2)) and bool(gmpy2.is_bpsw_prp(n))


def is_prime(n: int) -> bool:
    return is_probable_prime(n)


RHO_BUDGET = 1 << 18
RHO_MAX_BITS = 128


def _pollard_brent(n: int, c: int, budget: int = RHO_BUDGET) -> Optional[int]:
    nn = gmpy2.mpz(n)
    y, m, g, r, q = gmpy2.mpz(2), 128, gmpy2.mpz(1), 1, gmpy2.mpz(1)
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % nn
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % nn
                q = q * abs(x - y) % nn
            g = gmpy2.gcd(q, nn)
            k += m
        r *= 2
        if r > budget:
            return None
    if g == nn:
        while True:
            ys = (ys * ys + c) % nn
            g = gmpy2.gcd(abs(x - ys), nn)
            if g > 1:
                break
    return int(g) if g != nn else None


def _split(n: int) -> int:
    if is_probable_prime(n):
        return n
    r = isqrt(n)
    if r * r == n:
        return r
    for c in range(1, 9):
        d = _pollard_brent(n, c)
        if d is not None and 1 < d < n:
            return d
    raise ArithmeticError(f"could not split {n} within the rho budget")


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization {p: e} of n >= 1."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: Dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _split(m)
        stack.extend([d, m // d])
    return dict(sorted(out.items()))


def pocklington_certify(n: int, known: Dict[int, int]) -> bool:
    """Prove n prime from a partial factorization F of n - 1 with F^2 > n.

    ``known`` lists primes dividing n - 1 (with exponents) whose product F
    satisfies F^2 > n; each must itself be prime (checked recursively).
    """
    if n < 2:
        return False
    if n < _MR_DETERMINISTIC_BELOW:
        return is_probable_prime(n)
    f = 1
    for q, e in known.items():
        if (n - 1) % (q ** e):
            return False
        f *= q ** e
    if f * f <= n:
        return False
    for q in known:
        if not certified_prime(q):
            return False
        nn = gmpy2.mpz(n)
        for a in range(2, 1000):
            if gmpy2.powmod(a, nn - 1, nn) != 1:
                return False
            if gmpy2.gcd(gmpy2.powmod(a, (nn - 1) // q, nn) - 1, nn) == 1:
                break
        else:
            return False
    _CERTIFIED.add(n)
    return True


_CERTIFIED: set = set()


def certified_prime(n: int) -> bool:
    """Primality with a proof: deterministic MR below 3.3e24, otherwise a
    Pocklington certificate from the part of n - 1 that splits into primes
    below SMALL_PRIME_LIMIT and at most one (recursively certified) large
    prime cofactor. Returns False when no certificate is found."""
    if n in _CERTIFIED:
        return True
    if not is_probable_prime(n):
        return False
    if n < _MR_DETERMINISTIC_BELOW:
        return True
    small, rest = _small_part(n - 1)
    known = dict(small)
    if rest > 1 and is_probable_prime(rest) and certified_prime(rest):
        known[rest] = 1
    return pocklington_certify(n, known)


def multiplicative_order(a: int, d: int) -> int:
    if gcd(a, d) != 1:
        raise ValueError(f"{a} is not a unit mod {d}")
    if d == 1:
        return 1
    # order divides Carmichael lambda(d); search the divisors of phi(d)
    phi = 1
    for p, e in factorize(d).items():
        phi *= (p - 1) * p ** (e - 1)
    order = phi
    for p in factorize(phi):
        while order % p == 0 and pow(a, order // p, d) == 1:
            order //= p
    return order


# ---------------------------------------------------------------------------
# the family search

def f(n: int) -> int:
    return 3 * n * n + 3 * n + 1


_PRIMORIAL = None


def _primorial():
    global _PRIMORIAL
    if _PRIMORIAL is None:
        _PRIMORIAL = gmpy2.mpz(1)
        for p in small_primes():
            _PRIMORIAL *= p
    return _PRIMORIAL


def _small_part(v: int) -> Tuple[Dict[int, int], int]:
    """Factors of v below SMALL_PRIME_LIMIT and the remaining cofactor."""
    g = int(gmpy2.gcd(_primorial() % v, v)) if v > 1 else 1
    fac: Dict[int, int] = {}
    if g > 1:
        for p in factorize(g):
            e = 0
            while v % p == 0:
                v //= p
                e += 1
            fac[p] = e
    return fac, v


def factor_semiprime_check(v: int, known_minus_one: Optional[Dict[int, int]] = None
                           ) -> Optional[Tuple[int, int]]:
    """(v, 1) if v is prime, (p, q) with p < q if v = pq is squarefree with two
    prime factors, else None.

    Every returned prime is certified. A composite whose factors cannot all be
    found (small primes, then a bounded rho) is rejected, as is a prime factor
    above the deterministic Miller-Rabin range that cannot be certified.
    ``known_minus_one`` optionally gives prime powers dividing v - 1 whose
    product F has F^2 > v, for a direct Pocklington proof when v is prime.
    """
    if v < 2:
        raise ValueError("v must be at least 2")
    small, rest = _small_part(v)
    if sum(small.values()) > 2 or any(e > 1 for e in small.values()):
        return None
    primes = sorted(small)
    if rest > 1:
        if is_probable_prime(rest):
            if rest == v and known_minus_one and pocklington_certify(v, known_minus_one):
                return (v, 1)
            if not certified_prime(rest):
                return None
            primes.append(rest)
        else:
            if len(primes) >= 1:
                return None  # at least three prime factors
            if rest.bit_length() > RHO_MAX_BITS:
                return None  # unfactored composite
            try:
                d = _split(rest)
            except ArithmeticError:
                return None  # unfactored composite
            a, b = sorted((d, rest // d))
            if a == b or not (certified_prime(a) and certified_prime(b)):
                return None
            primes = [a, b]
    if len(primes) == 1:
        return (primes[0], 1)
    if len(primes) == 2 and primes[0] != primes[1]:
        return (primes[0], primes[1])
    return None


@dataclass(frozen=True)
class FamilyElement:
    n: int
    p: int
    q: int
    m0: int
    P_before: int

    def to_json(self) -> dict:
        return {"n": self.n, "p": self.p, "q": self.q, "m0": self.m0, "P_before": self.P_before}


@dataclass
class PrimePairFamily:
    elements: List[FamilyElement] = field(default_factory=list)

    @property
    def used_primes(self) -> List[int]:
        return sorted(x for e in self.elements for x in (e.p, e.q) if x != 1)

    @property
    def P(self) -> int:
        out = 1
        for x in self.used_primes:
            out *= x
        return out

    def triples(self) -> List[Tuple[int, int, int]]:
        return [(e.n, e.p, e.q) for e in self.elements]

    def validate(self) -> None:
        """Recheck every element from scratch, proving each prime with the
        same Pocklington hint the search used."""
        if not self.elements or self.triples()[0] != (1, 7, 1):
            raise AssertionError("family must start with (1, 7, 1)")
        P, used = 7, {7}
        for e in self.elements[1:]:
            if e.P_before != P:
                raise AssertionError(f"P_before {e.P_before} != {P} for n={e.n}")
            if e.m0 < 1 or e.n != P * e.m0 - 1:
                raise AssertionError(f"n={e.n} is not P m0 - 1")
            if f(e.n) != e.p * e.q:
                raise AssertionError(f"3n^2+3n+1 != p q for n={e.n}")
            if e.p == e.q:
                raise AssertionError("3n^2+3n+1 is not squarefree")
            pair = _accept(f(e.n), used, P, e.m0, {x: 1 for x in used})
            if pair != (e.p, e.q):
                raise AssertionError(f"{e.p} {e.q} are not certified fresh primes")
            used |= {e.p, e.q} - {1}
            P *= e.p * e.q

    def to_jsonl(self) -> str:
        return "".join(json.dumps(e.to_json(), sort_keys=True) + "\n" for e in self.elements)


def g_poly(P: int, m: int) -> int:
    return 3 * P * P * m * m - 3 * P * m + 1


def mod2_roots(P: int) -> List[int]:
    """Roots of g(m) = 3P^2 m^2 - 3Pm + 1 modulo 2. With two roots every value
    would be even; the scan only makes sense when this list is shorter."""
    return [m for m in (0, 1) if g_poly(P, m) % 2 == 0]


def _accept(v: int, used: set, P: int, m: int, p_fac: Dict[int, int]
            ) -> Optional[Tuple[int, int]]:
    """factor_semiprime_check with the Pocklington hint F = 3 P m: indeed
    g(m) - 1 = 3Pm (Pm - 1) and F^2 = 9 P^2 m^2 > g(m)."""
    known = dict(p_fac)
    for q, e in factorize(3 * m).items():
        known[q] = known.get(q, 0) + e
    pair = factor_semiprime_check(v, known)
    if pair is None:
        return None
    if any(x in used for x in pair if x != 1):
        return None
    return pair


def next_family_element(fam: PrimePairFamily, scan_bound: int = DEFAULT_SCAN_BOUND,
                        workers: int = 1) -> FamilyElement:
    if not fam.elements:
        return FamilyElement(1, 7, 1, 0, 1)
    P = fam.P
    if len(mod2_roots(P)) == 2:
        raise SearchExhausted("g(m) is even for every m")
    used = set(fam.used_primes)
    p_fac = {x: 1 for x in used}
    if workers > 1:
        m0, pair = _parallel_scan(P, used, p_fac, scan_bound, workers)
    else:
        m0, pair = None, None
        for m in range(1, scan_bound + 1):
            v = g_poly(P, m)
            assert gcd(v, P) == 1, "prime factor of P divides g(m)"
            pair = _accept(v, used, P, m, p_fac)
            if pair is not None:
                m0 = m
                break
    if m0 is None:
        raise SearchExhausted(f"no admissible m <= {scan_bound}")
    n = P * m0 - 1
    assert f(n) == g_poly(P, m0)
    return FamilyElement(n, pair[0], pair[1], m0, P)


def _scan_chunk(args):
    P, used, p_fac, lo, hi = args
    for m in range(lo, hi):
        pair = _accept(g_poly(P, m), used, P, m, p_fac)
        if pair is not None:
            return m, pair
    return None, None


def _parallel_scan(P, used, p_fac, bound, workers, chunk=64):
    from concurrent.futures import ProcessPoolExecutor
    lo = 1
    with ProcessPoolExecutor(max_workers=workers) as ex:
        while lo <= bound:
            ranges = [(P, used, p_fac, a, min(a + chunk, bound + 1))
                      for a in range(lo, min(lo + chunk * workers, bound + 1), chunk)]
            for m, pair in ex.map(_scan_chunk, ranges):
                if m is not None:
                    return m, pair  # ranges are in increasing order: first hit is least
            lo = ranges[-1][3]
    return None, None


def generate_family(k: int, scan_bound: int = DEFAULT_SCAN_BOUND, workers: int = 1) -> PrimePairFamily:
    if k < 1:
        raise ValueError("k must be at least 1")
    fam = PrimePairFamily()
    for _ in range(k):
        fam.elements.append(next_family_element(fam, scan_bound, workers))
    fam.validate()
    return fam


def family_from_jsonl(text: str) -> PrimePairFamily:
    els = []
    for line in text.splitlines():
        if line.strip():
            d = json.loads(line)
            els.append(FamilyElement(int(d["n"]), int(d["p"]), int(d["q"]),
                                     int(d.get("m0", 0)), int(d.get("P_before", 1))))
    return PrimePairFamily(els)
