"""Exact and numerical checks of Floer-theoretic invariants of the Chiang Lagrangian."""

from .exact import GF, QQ, ZZ, ExactMatrix, Mod, char_poly, prime_divisors, roots_mod_p, smith_normal_form
from .complexes import GradedBasis, GradedComplex, LocalSystem, homology_over_field, homology_over_Z, verify_d_squared
from .pearl import SignChoice, build_chiang_complex, det_formula_scan, floer_cohomology, m0_chiang, morse_matrix

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "ZZ",
    "ExactMatrix",
    "Mod",
    "char_poly",
    "prime_divisors",
    "roots_mod_p",
    "smith_normal_form",
    "GradedBasis",
    "GradedComplex",
    "LocalSystem",
    "homology_over_field",
    "homology_over_Z",
    "verify_d_squared",
    "SignChoice",
    "build_chiang_complex",
    "det_formula_scan",
    "floer_cohomology",
    "m0_chiang",
    "morse_matrix",
]
