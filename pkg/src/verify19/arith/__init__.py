"""Exact arithmetic kernel: rationals, polynomials, F_p factorization."""

from .finite_field import ModPFactorization, factor_mod_p, is_prime
from .galois import CubicGroup, cubic_galois_group, is_irreducible_cubic
from .integers import factorint, squarefree_class
from .poly import Polynomial, poly_discriminant, poly_gcd, rational_roots, resultant

__all__ = [
    "CubicGroup",
    "ModPFactorization",
    "Polynomial",
    "cubic_galois_group",
    "factor_mod_p",
    "factorint",
    "is_irreducible_cubic",
    "is_prime",
    "poly_discriminant",
    "poly_gcd",
    "rational_roots",
    "resultant",
    "squarefree_class",
]
