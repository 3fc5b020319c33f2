"""Generate the prime-pair family and certify a small combination of its
members, each paired with the negative of its reverse.

    python demos/family.py [count]
"""

import sys

from knotcert.certify import obstruct_combination
from knotcert.obstruction import shipped_ledger
from knotcert.primegen import generate_family

count = int(sys.argv[1]) if len(sys.argv) > 1 else 4
fam = generate_family(count)
print("n, p, q with 3n^2 + 3n + 1 = p q:")
for e in fam.elements:
    print(f"  n = {e.n}  p = {e.p}  q = {e.q}  (m0 = {e.m0})")

ledger = shipped_ledger()
for coeffs in ({1: 1}, {6: -1}, {1: 1, 6: 1}):
    cert = obstruct_combination(fam, coeffs, ledger=ledger)
    print(f"\ncoefficients {coeffs}: {cert.verdict} ({cert.reason})")
    for comp in cert.extra.get("components", []):
        print(f"  n = {comp['n']}, p = {comp['prime']}: signature survivors "
              f"{comp['forced_shape'] or 'none'}")
