"""Exact computations behind Casson-Gordon and d-invariant slicing obstructions
for satellite knots: branched-cover homology, linking forms, metabolizers,
signature and discriminant shadows, prime-pair families and certificates."""

__version__ = "0.1.0"

from .knots import (AlexanderPolynomial, Companion, KnotExpr, SatelliteKnot, SeifertMatrix,
                    alexander, connected_sum, difference_with_reverse, rn_model, rn_satellite)
from .cover import cover_homology, eigenspaces, labeled_generators
from .metabolizer import enumerate_metabolizers, equivariant_metabolizers
from .obstruction import (CGSignatureQuery, DLedger, discriminant, exists_negative_b, is_d_norm,
                          levine_tristram, signature_sum)
from .primegen import PrimePairFamily, factorize, generate_family, is_prime
from .certify import obstruct_combination, obstruct_single, verify_reduction_lemma

__all__ = [
    "AlexanderPolynomial", "CGSignatureQuery", "Companion", "DLedger", "KnotExpr",
    "PrimePairFamily", "SatelliteKnot", "SeifertMatrix", "alexander", "connected_sum",
    "cover_homology", "difference_with_reverse", "discriminant", "eigenspaces",
    "enumerate_metabolizers", "equivariant_metabolizers", "exists_negative_b", "factorize",
    "generate_family", "is_d_norm", "is_prime", "labeled_generators", "levine_tristram",
    "obstruct_combination", "obstruct_single", "rn_model", "rn_satellite", "signature_sum",
    "verify_reduction_lemma",
]
