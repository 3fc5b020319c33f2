"""Walk through the single-knot obstruction for K # -rho(K).

K is the genus-two satellite with the positive untwisted double D of the
unknot on one band and the twist knot J = [[-1, 1], [0, 5]] on the other.

    python demos/single_knot.py
"""

from knotcert.certify import obstruct_single
from knotcert.cover import cover_homology, labeled_generators
from knotcert.knots import (DOUBLE_FORM, Companion, SeifertMatrix, alexander,
                            difference_with_reverse, rn_satellite)
from knotcert.metabolizer import enumerate_metabolizers, equivariant_metabolizers_direct
from knotcert.obstruction import discriminant, is_d_norm, shipped_ledger

J = Companion(0, SeifertMatrix(((-1, 1), (0, 5))), "J", d_neutral=True)
knot = rn_satellite(1, Companion(0, DOUBLE_FORM, "D"), J)
expr = difference_with_reverse(knot)

h = cover_homology(expr.matrix, 3)
print("H_1 of the 3-fold cover:", " + ".join(f"Z/{d}" for d in h.invariant_factors))
print("labeled generators at p = 7:")
for g in labeled_generators(expr, 3, 7, h):
    print(f"  {g.name}: deck eigenvalue {g.eigenvalue}")

print("metabolizers:", len(enumerate_metabolizers(h)),
      "of which deck-invariant:", len(equivariant_metabolizers_direct(h)[7]))

delta = alexander(J.matrix)
disc = discriminant(delta, 7)
print(f"Alexander polynomial of J: {delta}; discriminant at 7: {disc.value};",
      "7-norm" if is_d_norm(disc.value, 7).verdict else "not a 7-norm")

for label, ledger in (("with the shipped ledger", shipped_ledger()), ("without a ledger", None)):
    cert = obstruct_single(expr, 3, ledger)
    print(f"\n{label}: {cert.verdict}")
    for v in cert.metabolizers(7):
        print(f"  {v.family:28s} {v.killed_by}")
