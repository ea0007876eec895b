from __future__ import annotations

from enum import Enum

from ..errors import PreconditionError
from .integers import is_rational_square
from .poly import Polynomial, poly_discriminant, rational_roots


class CubicGroup(str, Enum):
    C3 = "C3"
    S3 = "S3"


def is_irreducible_cubic(f: Polynomial) -> bool:
    # a reducible cubic over Q has a linear factor, hence a rational root
    return f.degree == 3 and not rational_roots(f)


def cubic_galois_group(f: Polynomial) -> CubicGroup:
    """Galois group of an irreducible rational cubic: C3 iff disc is a square."""
    if f.degree != 3:
        raise PreconditionError(f"{f} is not a cubic")
    if not is_irreducible_cubic(f):
        raise PreconditionError(f"{f} is reducible over Q")
    return CubicGroup.C3 if is_rational_square(poly_discriminant(f)) else CubicGroup.S3
