"""Levine-Tristram signatures and the Casson-Gordon signature sums of the
trefoil, evaluated exactly.

    python demos/signatures.py
"""

from fractions import Fraction

from knotcert.knots import TREFOIL_FORM
from knotcert.obstruction import (CGSignatureQuery, SingularAtRoot, exists_negative_b,
                                  levine_tristram, signature_sum)

print("sigma_r of the trefoil on a grid of twelfths:")
for k in range(1, 12):
    r = Fraction(k, 12)
    try:
        s = levine_tristram(TREFOIL_FORM, r)
    except SingularAtRoot:
        s = "singular"
    print(f"  r = {str(r):5s} sigma = {s}")

print("\nsignature sums at p = 7, c = 2:")
for b in range(1, 7):
    print(f"  b = {b}: {signature_sum(CGSignatureQuery(TREFOIL_FORM, 7, 2, b))}")
print("least b with a negative sum at p = 127, c = 107:", exists_negative_b(TREFOIL_FORM, 127, 107))
