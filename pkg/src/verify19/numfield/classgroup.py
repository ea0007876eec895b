"""Minkowski bounds and class-number-one verification by bounded search."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

import numpy as np

from ..arith.integers import root_enclosure
from ..report import CheckReport
from .embeddings import fincke_pohst, lll_reduce, t2_gram
from .field import FieldElement, NumberField
from .ideals import Ideal, PrimeIdeal, primes_up_to_norm

# 3.14159 < pi, so 4/pi < 4/PI_LOWER and the Minkowski bound errs upward
PI_LOWER = Fraction(314159, 100000)
DEFAULT_RADIUS = 12
DEFAULT_POINT_LIMIT = 2_000_000


def minkowski_bound(nf: NumberField) -> Fraction:
    """Rational M >= (n!/n^n) (4/pi)^r2 sqrt|d|."""
    nf.require_verified()
    n = nf.degree
    _, r2 = nf.signature
    _, sqrt_hi = root_enclosure(Fraction(abs(nf.field_disc)), 2, 10**9)
    return Fraction(factorial(n), n**n) * (4 / PI_LOWER) ** r2 * sqrt_hi


def find_generator(
    ideal: Ideal,
    radius: int = DEFAULT_RADIUS,
    point_limit: int = DEFAULT_POINT_LIMIT,
) -> FieldElement | None:
    """An element x with (x) = ideal whose basis coordinates are bounded by radius.

    Candidates come from T2 enumeration of the ideal lattice in growing
    ellipsoids; each candidate is confirmed exactly by |N(x)| = N(ideal).
    The ellipsoids stop once they contain the whole coordinate box, so a
    None result means no generator exists inside the box (or the point
    budget ran out).
    """
    nf = ideal.field
    n = nf.degree
    target = ideal.norm()
    if ideal.denominator != 1:
        raise ValueError("find_generator expects an integral ideal")
    rows = lll_reduce([list(r) for r in ideal.hnf], lambda b: t2_gram(nf, b))
    gram = t2_gram(nf, rows)
    basis_t2 = np.diag(t2_gram(nf, [[int(i == j) for j in range(n)] for i in range(n)]))
    box_bound = radius**2 * float(np.sum(np.sqrt(basis_t2))) ** 2
    c = n * float(target) ** (2 / n)
    seen = 0
    while True:
        c_eff = min(c, box_bound)
        for vec in fincke_pohst(gram, c_eff):
            seen += 1
            if seen > point_limit:
                return None
            coords = [sum(v * r[j] for v, r in zip(vec, rows)) for j in range(n)]
            if max(abs(x) for x in coords) > radius:
                continue
            x = nf.element(coords)
            if abs(x.norm()) == target:
                return x
        if c_eff >= box_bound:
            return None
        c *= 4


def verify_class_number_one(
    nf: NumberField,
    radius: int = DEFAULT_RADIUS,
    point_limit: int = DEFAULT_POINT_LIMIT,
) -> CheckReport:
    """Every prime of norm <= Minkowski bound must have a generator in the box."""
    nf.require_verified()
    bound = minkowski_bound(nf)
    rep = CheckReport(f"class number one {nf.name}")
    rep.data["minkowski_bound"] = str(bound)
    rep.data["radius"] = radius
    primes: list[PrimeIdeal] = primes_up_to_norm(nf, bound)
    rep.data["primes"] = []
    for q in primes:
        gen = find_generator(q.ideal, radius, point_limit)
        label = f"prime above {q.p} of norm {q.norm}"
        if gen is None:
            rep.inconclusive.append(f"{label}: no generator within radius {radius}")
            rep.data["primes"].append({"p": q.p, "norm": q.norm, "generator": None})
            continue
        ok = Ideal.principal(nf, gen) == q.ideal
        rep.add(f"{label} is principal", ok, f"generator {list(map(str, gen.coords))}")
        rep.data["primes"].append(
            {"p": q.p, "norm": q.norm, "generator": [str(c) for c in gen.coords],
             "max_coordinate": max(abs(int(c)) for c in gen.coords)}
        )
    return rep
