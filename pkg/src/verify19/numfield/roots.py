"""Deciding whether a rational polynomial has a root in a number field."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from ..arith import finite_field as ff
from ..arith.integers import primes_up_to
from ..arith.poly import Polynomial
from ..errors import PreconditionError
from .embeddings import conjugate_roots, embedding_matrix
from .field import FieldElement, NumberField


@dataclass(frozen=True)
class RootSearch:
    """Outcome of has_root.

    ``witness`` is an exactly verified root when found.  When no root
    exists, ``obstruction`` names a prime P with residue degree f such
    that g mod P has no root in the residue field.
    """

    found: bool
    witness: FieldElement | None = None
    obstruction: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.found

    @property
    def certified(self) -> bool:
        return self.witness is not None or self.obstruction is not None


def _candidate_roots(nf: NumberField, g: Polynomial) -> list[FieldElement]:
    """Exact candidates from consistent assignments of complex roots of g."""
    n = nf.degree
    prim = g.primitive_part()
    scale = int(prim.lc)  # lc * y is integral for any root y of prim
    zs = np.roots([float(c) for c in reversed(prim.coeffs)])
    emb = embedding_matrix(nf)  # emb[i, j] = sigma_j(b_i)
    inv = np.linalg.inv(emb)
    r1, r2 = nf.signature
    out = []
    seen = set()
    # assign roots to r1 real places and r2 upper complex places; lower ones are conjugates
    real_z = [z for z in zs if abs(z.imag) < 1e-7]
    for real_part in product(real_z, repeat=r1):
        for cplx_part in product(zs, repeat=r2):
            values = np.array(
                [z.real for z in real_part] + list(cplx_part) + [np.conj(z) for z in cplx_part], dtype=complex
            )
            coords = np.real(values @ inv) * scale
            rounded = tuple(int(round(c)) for c in coords)
            if rounded in seen or np.max(np.abs(coords - rounded)) > 1e-4:
                continue
            seen.add(rounded)
            y = nf.element([Fraction(c, scale) for c in rounded])
            out.append(y)
    return out


def _evaluate(g: Polynomial, y: FieldElement) -> FieldElement:
    acc = y.field.zero
    for c in reversed(g.coeffs):
        acc = acc * y + c
    return acc


def _obstruction(nf: NumberField, g: Polynomial, max_prime: int) -> tuple[int, int] | None:
    from .ideals import factor_rational_prime

    prim = g.primitive_part()
    for p in primes_up_to(max_prime):
        if int(prim.lc) % p == 0:
            continue
        gbar = ff.reduce_poly(prim, p)
        fac = ff.factor_fp(gbar, p)
        degs = set(fac.degrees())
        for q in factor_rational_prime(nf, p):
            # a root y in K is P-integral (lc * y is integral and lc is a P-unit),
            # so its residue would be a root of g mod p in F_{p^f}
            if not any(q.f % d == 0 for d in degs):
                return (p, q.f)
    return None


def has_root(nf: NumberField, g: Polynomial, max_prime: int = 200) -> RootSearch:
    """Whether g has a root in nf, with an exact witness or a mod-P obstruction."""
    if g.degree < 1:
        raise PreconditionError("g must be nonconstant")
    if g.degree > nf.degree:
        raise PreconditionError(f"deg g = {g.degree} exceeds [K:Q] = {nf.degree}")
    for y in _candidate_roots(nf, g):
        if _evaluate(g, y).is_zero():
            return RootSearch(True, witness=y)
    obs = _obstruction(nf, g, max_prime)
    return RootSearch(False, obstruction=obs)


def all_roots(nf: NumberField, g: Polynomial) -> list[FieldElement]:
    """Every root of g in nf (exactly verified; numerically complete)."""
    return sorted(
        {y for y in _candidate_roots(nf, g) if _evaluate(g, y).is_zero()},
        key=lambda y: y.coords,
    )


__all__ = ["RootSearch", "all_roots", "conjugate_roots", "has_root"]
