"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import lcm, gcd
from typing import Iterable, Sequence

from ..errors import DomainError


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Polynomial:
    """Immutable polynomial over Q, coefficients stored lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> Polynomial:
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    # -- basic accessors ------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- ring operations ------------------------------------------------
    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative polynomial power")
        result, base = Polynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: Polynomial):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        inv_lc = 1 / other.lc
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(quot), Polynomial(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- evaluation -----------------------------------------------------
    def __call__(self, value):
        """Horner evaluation; ``value`` may be any ring element that accepts
        multiplication and addition with Fractions."""
        acc = Fraction(0) if isinstance(value, (int, Fraction)) else value * 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def scale_variable(self, a) -> Polynomial:
        """Return p(a*x)."""
        a = _frac(a)
        return Polynomial(c * a**i for i, c in enumerate(self.coeffs))

    def compose(self, other: Polynomial) -> Polynomial:
        result = Polynomial()
        for c in reversed(self.coeffs):
            result = result * other + c
        return result

    # -- integer structure ----------------------------------------------
    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def integer_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise DomainError(f"{self} has non-integral coefficients")
        return [int(c) for c in self.coeffs]

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive in Z[x]."""
        if self.is_zero():
            return Fraction(0)
        d = self.denominator()
        ints = [int(c * d) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return Fraction(g, d)

    def primitive_part(self) -> Polynomial:
        c = self.content()
        p = self * (1 / c)
        return -p if p.lc < 0 else p


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd over Q (zero if both inputs are zero)."""
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def resultant(f: Polynomial, g: Polynomial) -> Fraction:
    """Res(f, g) by the Euclidean remainder sequence over Q."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    sign = 1
    acc = Fraction(1)
    a, b = f, g
    while True:
        m, n = a.degree, b.degree
        if n == 0:
            return sign * acc * b.lc**m
        r = a % b
        if r.is_zero():
            return Fraction(0)
        k = r.degree
        # Res(a, b) = (-1)^{mn} lc(b)^{m-k} Res(b, r)
        if (m * n) % 2:
            sign = -sign
        acc *= b.lc ** (m - k)
        a, b = b, r


def poly_discriminant(f: Polynomial) -> Fraction:
    """disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise DomainError("discriminant of a constant polynomial is undefined")
    if n == 1:
        return Fraction(1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lc


def rational_roots(f: Polynomial) -> list[Fraction]:
    """All rational roots of f, without multiplicity, in increasing order."""
    if f.is_zero():
        raise DomainError("zero polynomial has every rational root")
    p = f.primitive_part()
    cs = p.integer_coeffs()
    roots = set()
    # strip x^k factors
    while cs and cs[0] == 0:
        roots.add(Fraction(0))
        cs = cs[1:]
    if len(cs) <= 1:
        return sorted(roots)
    a0, an = abs(cs[0]), abs(cs[-1])
    q = Polynomial(cs)
    for num in _divisors(a0):
        for den in _divisors(an):
            for s in (1, -1):
                r = Fraction(s * num, den)
                if q(r) == 0:
                    roots.add(r)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def as_polynomial(p: Polynomial | Sequence) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial(p)
