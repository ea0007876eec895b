"""Polynomial arithmetic and factorization over prime fields F_p.

Polynomials here are plain lists of ints in [0, p), lowest degree first,
with no trailing zeros.  The zero polynomial is the empty list.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..errors import DomainError, PreconditionError
from .poly import Polynomial

FpPoly = list  # list[int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def trim(a: FpPoly) -> FpPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_poly(f: Polynomial, p: int) -> FpPoly:
    """Image of a p-integral rational polynomial in F_p[x]."""
    out = []
    for c in f.coeffs:
        if c.denominator % p == 0:
            raise DomainError(f"coefficient {c} is not {p}-integral")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return trim(out)


def lift(a: FpPoly) -> Polynomial:
    return Polynomial(a)


def add(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def scale(a: FpPoly, c: int, p: int) -> FpPoly:
    return trim([x * c % p for x in a])


def mul(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_fp(a: FpPoly, b: FpPoly, p: int) -> tuple[FpPoly, FpPoly]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial over F_p")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], rem
    inv = pow(b[-1], -1, p)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] * inv % p
        quot[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] = (rem[k + j] - c * y) % p
    return trim(quot), trim(rem[:db])


def mod(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    return divmod_fp(a, b, p)[1]


def monic(a: FpPoly, p: int) -> FpPoly:
    if not a:
        return []
    return scale(a, pow(a[-1], -1, p), p)


def gcd(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def derivative(a: FpPoly, p: int) -> FpPoly:
    return trim([i * c % p for i, c in enumerate(a)][1:])


def powmod(a: FpPoly, e: int, m: FpPoly, p: int) -> FpPoly:
    result, base = [1], mod(a, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return result


def evaluate(a: FpPoly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _pth_root(a: FpPoly, p: int) -> FpPoly:
    # a(x) = b(x^p) with coefficients in F_p (Frobenius is the identity on F_p)
    return trim([a[i] for i in range(0, len(a), p)])


def squarefree_decomposition(f: FpPoly, p: int) -> list[tuple[FpPoly, int]]:
    """Monic f = prod g_i^{e_i} with g_i squarefree and pairwise coprime."""
    f = monic(f, p)
    if len(f) <= 1:
        return []
    out: list[tuple[FpPoly, int]] = []
    df = derivative(f, p)
    if not df:
        for g, e in squarefree_decomposition(_pth_root(f, p), p):
            out.append((g, e * p))
        return out
    c = gcd(f, df, p)
    w = divmod_fp(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gcd(w, c, p)
        z = divmod_fp(w, y, p)[0]
        if len(z) > 1:
            out.append((monic(z, p), i))
        i += 1
        w = y
        c = divmod_fp(c, y, p)[0]
    if len(c) > 1:
        for g, e in squarefree_decomposition(_pth_root(c, p), p):
            out.append((g, e * p))
    return out


def distinct_degree(f: FpPoly, p: int) -> list[tuple[FpPoly, int]]:
    """Split a squarefree monic f into products of irreducibles of equal degree."""
    out = []
    h = [0, 1]
    x = [0, 1]
    d = 0
    rest = f
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, rest, p)
        g = gcd(rest, sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            rest = divmod_fp(rest, g, p)[0]
            h = mod(h, rest, p)
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def equal_degree(f: FpPoly, d: int, p: int, rng: random.Random) -> list[FpPoly]:
    """Cantor-Zassenhaus splitting of f, a product of irreducibles of degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^{2^{d-1}}
            t, acc = a, a
            for _ in range(d - 1):
                t = mod(mul(t, t, p), f, p)
                acc = add(acc, t, p)
            g = gcd(f, acc, p)
        else:
            e = (p**d - 1) // 2
            g = gcd(f, sub(powmod(a, e, f, p), [1], p), p)
        if 1 < len(g) < len(f):
            h = divmod_fp(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(monic(h, p), d, p, rng)


@dataclass(frozen=True)
class ModPFactorization:
    prime: int
    unit: int
    factors: tuple  # tuple[(tuple[int, ...], multiplicity)]

    def product(self) -> FpPoly:
        acc = [self.unit]
        for g, e in self.factors:
            for _ in range(e):
                acc = mul(acc, list(g), self.prime)
        return acc

    def degrees(self) -> list[int]:
        return [len(g) - 1 for g, _ in self.factors]

    def describe(self) -> str:
        parts = []
        for g, e in self.factors:
            s = f"({lift(list(g))})"
            parts.append(s if e == 1 else f"{s}^{e}")
        return " * ".join(parts) if parts else "1"


def factor_fp(f: FpPoly, p: int, seed: int = 0) -> ModPFactorization:
    if not f:
        raise DomainError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    unit = f[-1]
    factors = []
    for g, e in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                factors.append((tuple(monic(irr, p)), e))
    factors.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return ModPFactorization(p, unit, tuple(factors))


def factor_mod_p(f: Polynomial, p: int) -> ModPFactorization:
    """Complete factorization of f mod p into monic irreducibles."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if f.lc.numerator % p == 0 or f.lc.denominator % p == 0:
        raise PreconditionError(f"leading coefficient {f.lc} vanishes mod {p}")
    return factor_fp(reduce_poly(f, p), p)


def fp_roots(f: FpPoly, p: int) -> list[int]:
    return [x for x in range(p) if evaluate(f, x, p) == 0]


def fraction_mod(c: Fraction, p: int) -> int:
    if c.denominator % p == 0:
        raise DomainError(f"{c} is not {p}-integral")
    return c.numerator * pow(c.denominator, -1, p) % p
