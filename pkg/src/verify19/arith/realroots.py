"""Real root isolation by Sturm sequences, with exact rational intervals."""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial, poly_gcd


def sturm_sequence(f: Polynomial) -> list[Polynomial]:
    seq = [f, f.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        seq.append(-(seq[-2] % seq[-1]))
    return [s for s in seq if not s.is_zero()]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _at_infinity(p: Polynomial, positive: bool) -> int:
    lead = p.lc
    if positive or p.degree % 2 == 0:
        return 1 if lead > 0 else -1
    return -1 if lead > 0 else 1


def count_real_roots(f: Polynomial, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Distinct real roots of f in (lo, hi]; None means infinite."""
    f = f // poly_gcd(f, f.derivative()) if f.degree > 0 else f
    if f.degree <= 0:
        return 0
    seq = sturm_sequence(f)
    left = [_at_infinity(s, False) for s in seq] if lo is None else [s(lo) for s in seq]
    right = [_at_infinity(s, True) for s in seq] if hi is None else [s(hi) for s in seq]
    return _sign_changes(left) - _sign_changes(right)


def cauchy_bound(f: Polynomial) -> Fraction:
    lead = abs(f.lc)
    return 1 + max((abs(c) / lead for c in f.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(f: Polynomial) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], each holding exactly one real root."""
    f = f // poly_gcd(f, f.derivative())
    if f.degree <= 0:
        return []
    b = cauchy_bound(f)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = count_real_roots(f, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.extend([(lo, mid), (mid, hi)])
    return sorted(out)


def refine_root(f: Polynomial, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval (lo, hi] of f until hi - lo <= width."""
    f = f // poly_gcd(f, f.derivative())
    while hi - lo > width:
        mid = (lo + hi) / 2
        if count_real_roots(f, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def sign_at_root(g: Polynomial, f: Polynomial, lo: Fraction, hi: Fraction) -> int:
    """Sign of g(r) at the unique root r of f in (lo, hi].

    Refines until g has no root in the interval; g(r) = 0 is detected
    through gcd(f, g).
    """
    fs = f // poly_gcd(f, f.derivative())
    common = poly_gcd(fs, g)
    if common.degree > 0 and count_real_roots(common, lo, hi) == 1:
        return 0
    while count_real_roots(g, lo, hi) > 0 or g(hi) == 0:
        mid = (lo + hi) / 2
        if count_real_roots(fs, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    v = g(hi)
    return 1 if v > 0 else -1
