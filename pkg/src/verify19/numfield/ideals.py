"""Fractional ideals in HNF, prime decomposition, p-maximality."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Iterable, Iterator

from ..arith import finite_field as ff
from ..arith.finite_field import factor_mod_p, is_prime
from ..arith.linalg import hnf, nullspace_mod, rref_mod
from ..arith.poly import Polynomial
from ..errors import DomainError, PreconditionError
from .field import FieldElement, NumberField


def _as_element(nf: NumberField, g) -> FieldElement:
    if isinstance(g, FieldElement):
        return g
    return nf.scalar(g)


class Ideal:
    """Fractional ideal (1/denominator) * L with L given by an integer row HNF.

    Rows of ``hnf`` are coordinates in the integral basis.
    """

    __slots__ = ("field", "hnf", "denominator", "__dict__")

    def __init__(self, field: NumberField, rows, denominator: int = 1):
        n = field.degree
        h = hnf(rows, n)
        if len(h) != n:
            raise DomainError("ideal lattice must have full rank")
        g = denominator
        for row in h:
            for x in row:
                g = gcd(g, x)
        self.field = field
        self.hnf = tuple(tuple(x // g for x in row) for row in h)
        self.denominator = denominator // g

    @classmethod
    def from_generators(cls, nf: NumberField, gens: Iterable) -> Ideal:
        """Ideal generated over O by the given elements."""
        rows = []
        for g in gens:
            g = _as_element(nf, g)
            if g.is_zero():
                continue
            for i in range(nf.degree):
                rows.append((g * nf.basis_element(i)).coords)
        if not rows:
            raise DomainError("the zero ideal is not a fractional ideal")
        d = lcm(*(x.denominator for row in rows for x in row))
        return cls(nf, [[int(x * d) for x in row] for row in rows], d)

    @classmethod
    def principal(cls, nf: NumberField, x) -> Ideal:
        return cls.from_generators(nf, [x])

    @classmethod
    def unit(cls, nf: NumberField) -> Ideal:
        return cls(nf, [[int(i == j) for j in range(nf.degree)] for i in range(nf.degree)])

    # -- basic invariants --------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.field is other.field and self.hnf == other.hnf and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.hnf, self.denominator))

    def __repr__(self):
        return f"Ideal(norm={self.norm()}, hnf={[list(r) for r in self.hnf]}, den={self.denominator})"

    def is_integral(self) -> bool:
        return self.denominator == 1

    def norm(self) -> Fraction:
        d = 1
        for i, row in enumerate(self.hnf):
            d *= row[i]
        return Fraction(d, self.denominator ** self.field.degree)

    def basis_elements(self) -> list[FieldElement]:
        return [self.field.element([Fraction(x, self.denominator) for x in row]) for row in self.hnf]

    def contains(self, x) -> bool:
        x = _as_element(self.field, x)
        v = [c * self.denominator for c in x.coords]
        if any(c.denominator != 1 for c in v):
            return False
        v = [int(c) for c in v]
        for i, row in enumerate(self.hnf):
            if v[i] % row[i]:
                return False
            q = v[i] // row[i]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def is_ideal(self) -> bool:
        """Lattice closed under multiplication by every basis element."""
        nf = self.field
        return all(self.contains(b * nf.basis_element(i)) for b in self.basis_elements() for i in range(nf.degree))

    # -- ideal arithmetic ---------------------------------------------------
    def __mul__(self, other: Ideal) -> Ideal:
        if not isinstance(other, Ideal):
            return NotImplemented
        nf = self.field
        a = [nf.element(r) for r in self.hnf]
        b = [nf.element(r) for r in other.hnf]
        rows = [(x * y).int_coords() for x in a for y in b]
        return Ideal(nf, rows, self.denominator * other.denominator)

    def __add__(self, other: Ideal) -> Ideal:
        d = lcm(self.denominator, other.denominator)
        rows = [[x * (d // self.denominator) for x in r] for r in self.hnf]
        rows += [[x * (d // other.denominator) for x in r] for r in other.hnf]
        return Ideal(self.field, rows, d)

    def __pow__(self, k: int) -> Ideal:
        if k < 0:
            raise DomainError("negative ideal powers are not supported")
        result = Ideal.unit(self.field)
        for _ in range(k):
            result = result * self
        return result

    def divides(self, other: Ideal) -> bool:
        """self | other, i.e. other is contained in self."""
        return all(self.contains(x) for x in other.basis_elements())

    # -- residues ------------------------------------------------------------
    def reduce(self, x: FieldElement) -> tuple[int, ...]:
        """Canonical representative of x mod self (integral ideal, integral x)."""
        if not self.is_integral():
            raise DomainError("residues need an integral ideal")
        v = list(x.int_coords())
        for i, row in enumerate(self.hnf):
            q = v[i] // row[i]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def residue_count(self) -> int:
        return int(self.norm())

    def residues(self) -> Iterator[tuple[int, ...]]:
        """All canonical representatives of O / self."""
        if not self.is_integral():
            raise DomainError("residues need an integral ideal")
        diag = [self.hnf[i][i] for i in range(self.field.degree)]
        for t in product(*(range(d) for d in diag)):
            yield t

    def residue_field_degree(self, p: int) -> int:
        n = self.norm()
        f = 0
        while n > 1:
            if n % p:
                raise DomainError("norm is not a power of p")
            n //= p
            f += 1
        return f


@dataclass(frozen=True)
class PrimeIdeal:
    ideal: Ideal
    p: int
    e: int
    f: int

    @property
    def norm(self) -> int:
        return self.p**self.f


# -- p-maximality -----------------------------------------------------------

def _int_mul(nf: NumberField, a, b) -> tuple[int, ...]:
    return (nf.element(a) * nf.element(b)).int_coords()


def _power_mod_p(nf: NumberField, v: tuple[int, ...], k: int, p: int) -> tuple[int, ...]:
    result = nf.one.int_coords()
    base = tuple(x % p for x in v)
    while k:
        if k & 1:
            result = tuple(x % p for x in _int_mul(nf, result, base))
        base = tuple(x % p for x in _int_mul(nf, base, base))
        k >>= 1
    return result


def p_radical(nf: NumberField, p: int) -> Ideal:
    """The p-radical {x in O : x^(p^k) in pO} with p^k >= degree."""
    n = nf.degree
    q = p
    while q < n:
        q *= p
    unit_rows = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    # Frobenius-power matrix over F_p; columns indexed by output coordinate
    images = [_power_mod_p(nf, e, q, p) for e in unit_rows]
    # kernel of v -> sum v_i images[i]: solve transpose system
    mt = [[images[i][j] for i in range(n)] for j in range(n)]
    kernel = nullspace_mod(mt, p, n)
    rows = [list(v) for v in kernel] + [[p * int(i == j) for j in range(n)] for i in range(n)]
    return Ideal(nf, rows)


def is_p_maximal(nf: NumberField, p: int) -> bool:
    """Ring-of-multipliers test: O is p-maximal iff {x : x I_p in I_p} = O.

    Here I_p is the p-radical.  The multiplier ring sits between O and
    (1/p) O; it is larger than O exactly when some y in O \\ pO satisfies
    y I_p in p I_p.
    """
    n = nf.degree
    rad = p_radical(nf, p)
    rad_basis = [list(r) for r in rad.hnf]

    def rad_coords(v):
        out = []
        v = list(v)
        for i, row in enumerate(rad_basis):
            if v[i] % row[i]:
                raise DomainError("element not in radical")
            q = v[i] // row[i]
            out.append(q)
            v = [a - q * b for a, b in zip(v, row)]
        return out

    rows_for_y = []
    for i in range(n):
        y = tuple(int(i == j) for j in range(n))
        row = []
        for g in rad_basis:
            row.extend(c % p for c in rad_coords(_int_mul(nf, y, g)))
        rows_for_y.append(row)
    # y in the kernel of the map F_p^n -> F_p^(n*n), y -> sum y_i rows_for_y[i]
    mt = [[rows_for_y[i][j] for i in range(n)] for j in range(len(rows_for_y[0]))]
    return not nullspace_mod(mt, p, n)


def dedekind_criterion(f: Polynomial, p: int) -> bool:
    """True iff Z[theta] is p-maximal for theta a root of monic integral f."""
    fac = factor_mod_p(f, p)
    rad = [1]
    rest = [1]
    full = [1]
    for g, m in fac.factors:
        g = list(g)
        rad = ff.mul(rad, g, p)
        for _ in range(m - 1):
            rest = ff.mul(rest, g, p)
        for _ in range(m):
            full = ff.mul(full, g, p)
    full = ff.scale(full, fac.unit, p)
    lifted = ff.lift(full)
    quot = (f - lifted) * Fraction(1, p)
    if not quot.is_integral():
        raise DomainError("lift does not agree with f mod p")
    big_f = ff.reduce_poly(quot, p)
    common = ff.gcd(ff.gcd(big_f, rad, p), rest, p)
    return len(common) <= 1


# -- prime decomposition ----------------------------------------------------

def _is_index_coprime(nf: NumberField, p: int) -> bool:
    index = nf.basis_index
    if index.denominator != 1:
        raise PreconditionError("basis does not contain Z[theta]")
    return int(index) % p != 0


def _valuation_of_p(prime: Ideal, p: int, n: int) -> int:
    pO = Ideal.from_generators(prime.field, [p])
    e, power = 0, Ideal.unit(prime.field)
    while e < n:
        nxt = power * prime
        if not nxt.divides(pO):
            break
        power, e = nxt, e + 1
    return e


def _kummer_primes(nf: NumberField, p: int) -> list[Ideal]:
    fac = factor_mod_p(nf.poly, p)
    out = []
    for coeffs, _ in fac.factors:
        g = ff.lift(list(coeffs))
        out.append(Ideal.from_generators(nf, [p, nf.from_polynomial(g)]))
    return out


class _Quotient:
    """O / J over F_p for an ideal J containing pO."""

    def __init__(self, nf: NumberField, ideal: Ideal, p: int):
        self.nf, self.p = nf, p
        self.red, self.pivots = rref_mod([list(r) for r in ideal.hnf], p)
        n = nf.degree
        self.free = [c for c in range(n) if c not in self.pivots]

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, v) -> list[int]:
        v = [x % self.p for x in v]
        for row, pc in zip(self.red, self.pivots):
            if v[pc]:
                c = v[pc]
                v = [(a - c * b) % self.p for a, b in zip(v, row)]
        return [v[c] for c in self.free]

    def minimal_polynomial(self, a: tuple[int, ...]) -> list[int]:
        """Minimal polynomial over F_p of the class of a, as F_p coefficients."""
        p = self.p
        powers = [self.reduce(self.nf.one.int_coords())]
        cur = self.nf.one.int_coords()
        while True:
            cur = tuple(x % p for x in _int_mul(self.nf, cur, a))
            vec = self.reduce(cur)
            # solve sum c_i powers[i] = vec
            k = len(powers)
            mt = [[powers[i][j] for i in range(k)] + [vec[j]] for j in range(self.dim)]
            ns = nullspace_mod(mt, p, k + 1)
            rel = next((v for v in ns if v[k] % p), None)
            if rel is not None:
                inv = pow(rel[k], -1, p)
                return ff.trim([(c * inv) % p for c in rel])
            powers.append(vec)


def _split_semisimple(nf: NumberField, ideal: Ideal, p: int, rng: random.Random) -> list[tuple[Ideal, int]]:
    """Maximal ideals above a radical ideal J with pO in J, plus residue degrees."""
    quo = _Quotient(nf, ideal, p)
    if quo.dim == 1:
        return [(ideal, 1)]
    n = nf.degree
    for attempt in range(200):
        if attempt < len(quo.free):
            c = quo.free[attempt]
            a = tuple(int(j == c) for j in range(n))
        else:
            a = tuple(rng.randrange(p) for _ in range(n))
        mp = quo.minimal_polynomial(a)
        if len(mp) - 1 == quo.dim:
            fac = ff.factor_fp(mp, p)
            if len(fac.factors) == 1 and fac.factors[0][1] == 1:
                return [(ideal, quo.dim)]
        fac = ff.factor_fp(mp, p)
        if len(fac.factors) < 2:
            continue
        out = []
        for coeffs, _ in fac.factors:
            g = ff.lift(list(coeffs))
            # g(a) as an element of O
            ga = nf.zero
            ae = nf.element(a)
            for coef in reversed(g.coeffs):
                ga = ga * ae + int(coef)
            sub = ideal + Ideal.from_generators(nf, [ga])
            out.extend(_split_semisimple(nf, sub, p, rng))
        return out
    raise DomainError(f"failed to split residue algebra at p={p}")


def _radical_primes(nf: NumberField, p: int, seed: int = 0) -> list[Ideal]:
    rad = p_radical(nf, p)
    return [P for P, _ in _split_semisimple(nf, rad, p, random.Random(seed))]


def factor_rational_prime(nf: NumberField, p: int, method: str = "auto") -> list[PrimeIdeal]:
    """Primes of O above p with ramification indices and residue degrees.

    ``method`` is "kummer" (factor the defining polynomial mod p; needs p
    coprime to the index of Z[theta]), "radical" (split O/rad(pO) directly),
    or "auto" which picks kummer when it applies.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    nf.require_verified()
    if method == "auto":
        method = "kummer" if _is_index_coprime(nf, p) else "radical"
    if method == "kummer":
        if not _is_index_coprime(nf, p):
            raise PreconditionError(f"p={p} divides the index of Z[theta]")
        ideals = _kummer_primes(nf, p)
    elif method == "radical":
        ideals = _radical_primes(nf, p)
    else:
        raise ValueError(f"unknown method {method!r}")
    out = []
    for P in ideals:
        out.append(PrimeIdeal(P, p, _valuation_of_p(P, p, nf.degree), P.residue_field_degree(p)))
    return sorted(out, key=lambda q: (q.f, q.e, q.ideal.hnf))


def prime_product(primes: list[PrimeIdeal]) -> Ideal:
    nf = primes[0].ideal.field
    result = Ideal.unit(nf)
    for q in primes:
        result = result * q.ideal**q.e
    return result


def primes_up_to_norm(nf: NumberField, bound) -> list[PrimeIdeal]:
    """All prime ideals of norm <= bound."""
    from ..arith.integers import primes_up_to

    out = []
    for p in primes_up_to(int(bound)):
        out.extend(q for q in factor_rational_prime(nf, p) if q.norm <= bound)
    return out
