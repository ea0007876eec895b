"""Integer and rational helpers: factoring small integers, exact roots,
square classes."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from ..errors import DomainError


def factorint(n: int) -> dict[int, int]:
    """Trial-division factorization of a nonzero integer (sign dropped)."""
    n = abs(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, v in enumerate(sieve) if v]


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 0:
        raise DomainError("iroot of a negative integer")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_enclosure(q: Fraction, k: int, scale: int) -> tuple[Fraction, Fraction]:
    """Rational lo <= q^(1/k) <= hi with hi - lo <= 1/scale (q >= 0)."""
    if q < 0:
        raise DomainError("root of a negative rational")
    # q^(1/k) = (num * den^(k-1))^(1/k) / den
    num = q.numerator * q.denominator ** (k - 1)
    den = q.denominator
    lo = iroot(num * scale**k, k)
    exact = lo**k == num * scale**k
    hi = lo if exact else lo + 1
    return Fraction(lo, den * scale), Fraction(hi, den * scale)


def squarefree_class(q) -> int:
    """The squarefree integer d with q = d * (rational square)."""
    q = Fraction(q)
    if q == 0:
        raise DomainError("0 has no square class")
    n = q.numerator * q.denominator
    sign = -1 if n < 0 else 1
    d = 1
    for prime, e in factorint(n).items():
        if e % 2:
            d *= prime
    return sign * d


def is_rational_square(q) -> bool:
    q = Fraction(q)
    if q < 0:
        return False
    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator
