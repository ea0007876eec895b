"""Ramification filtrations, discriminant valuation bounds, root-discriminant
bounds and degree bounds from discriminant tables."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from pathlib import Path

from .arith.finite_field import is_prime
from .arith.integers import root_enclosure
from .errors import DataFileError, DomainError


@dataclass(frozen=True)
class RamificationFiltration:
    """Orders g_i = |Gamma_i| of the lower-numbering ramification groups.

    ``orders[i]`` is g_i for i = 0..m; g_i = 1 for i > m.
    """

    orders: tuple[int, ...]

    def __post_init__(self):
        gs = tuple(int(g) for g in self.orders) or (1,)
        if gs[0] < 1:
            raise DomainError("g_0 must be >= 1")
        for a, b in zip(gs, gs[1:]):
            if b < 1 or a % b:
                raise DomainError(f"orders must form a divisor chain, got {gs}")
        object.__setattr__(self, "orders", gs)

    def g(self, i: int) -> int:
        return self.orders[i] if 0 <= i < len(self.orders) else 1

    @property
    def is_trivial(self) -> bool:
        return self.orders[0] == 1

    def lower_breaks(self) -> list[int]:
        """Integers i >= 0 with Gamma_i nontrivial and Gamma_i != Gamma_{i+1}, plus 0
        when inertia is nontrivial."""
        out = [0] if self.orders[0] > 1 else []
        for i in range(len(self.orders)):
            if self.g(i) > self.g(i + 1) and i not in out:
                out.append(i)
        return out


def herbrand_phi(filt: RamificationFiltration, u) -> Fraction:
    u = Fraction(u)
    if u < -1:
        raise DomainError(f"phi is defined for u >= -1, got {u}")
    if u <= 0:
        return u
    m = floor(u)
    total = sum(filt.g(i) for i in range(1, m + 1)) + (u - m) * filt.g(m + 1)
    return Fraction(total, 1) / filt.g(0)


def herbrand_psi(filt: RamificationFiltration, v) -> Fraction:
    """Inverse of herbrand_phi."""
    v = Fraction(v)
    if v < -1:
        raise DomainError(f"psi is defined for v >= -1, got {v}")
    if v <= 0:
        return v
    g0 = filt.g(0)
    acc = Fraction(0)  # phi(m)
    m = 0
    while True:
        slope = Fraction(filt.g(m + 1), g0)
        if v <= acc + slope:
            return m + (v - acc) / slope
        acc += slope
        m += 1


def upper_breaks(filt: RamificationFiltration) -> list[tuple[Fraction, int]]:
    """(phi(i), g_i) for each lower break i."""
    return [(herbrand_phi(filt, i), filt.g(i)) for i in filt.lower_breaks()]


def fontaine_bound(e: int, n: int, ell: int) -> Fraction:
    """e (n + 1/(ell - 1)) - 1: upper ramification vanishes above this."""
    if e < 1 or n < 1 or ell < 2:
        raise DomainError("need e >= 1, n >= 1, ell >= 2")
    return e * (n + Fraction(1, ell - 1)) - 1


def tame_disc_valuation(ell: int, degree: int) -> int:
    if degree % ell:
        raise DomainError(f"{ell} does not divide {degree}")
    return (ell - 1) * degree // ell


def wild_disc_valuation_bound(ell: int, degree: int) -> Fraction:
    if degree < 1:
        raise DomainError("degree must be >= 1")
    return Fraction(ell * degree, ell - 1)


@dataclass(frozen=True)
class Enclosure:
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    def __str__(self):
        return f"[{float(self.lo):.9f}, {float(self.hi):.9f}]"


def root_disc_bound(p: int, ell: int, width=Fraction(1, 10**6)) -> Enclosure:
    """Enclosure of p^((ell-1)/ell) * ell^(ell/(ell-1)) of width <= ``width``."""
    if p == ell:
        raise DomainError("p and ell must differ")
    if not (is_prime(p) and is_prime(ell)):
        raise DomainError("p and ell must be prime")
    scale = 10**4
    while True:
        a_lo, a_hi = root_enclosure(Fraction(p ** (ell - 1)), ell, scale)
        b_lo, b_hi = root_enclosure(Fraction(ell**ell), ell - 1, scale)
        enc = Enclosure(a_lo * b_lo, a_hi * b_hi)
        if enc.width <= width:
            return enc
        scale *= 100


# -- discriminant tables -----------------------------------------------------

@dataclass(frozen=True)
class DiscriminantTable:
    """Rows (degree, lower bound for the root discriminant), plus an optional
    asymptotic limit beyond which the table bounds nothing."""

    rows: tuple[tuple[int, Fraction], ...]
    flavor: str = ""
    source: str = ""
    limit: Fraction | None = None

    def __post_init__(self):
        for (d1, b1), (d2, b2) in zip(self.rows, self.rows[1:]):
            if d2 <= d1:
                raise DomainError("table degrees must be strictly increasing")
            if b2 < b1:
                raise DomainError("table bounds must be non-decreasing")

    def lower_bound(self, degree: int) -> Fraction | None:
        best = None
        for d, b in self.rows:
            if d <= degree:
                best = b
        return best


def load_table(path: str | Path) -> DiscriminantTable:
    """Read ``degree,min_root_disc`` rows; ``#`` lines form the header."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataFileError(path, f"unreadable table: {exc}") from None
    source, flavor = "", ""
    rows: list[tuple[int, Fraction]] = []
    limit = None
    for rec in csv.reader(line for line in text.splitlines() if line.strip()):
        if rec[0].startswith("#"):
            header = ",".join(rec).lstrip("#").strip()
            source = header
            if "flavor:" in header:
                flavor = header.split("flavor:", 1)[1].strip()
            continue
        key = rec[0].strip()
        if key == "degree":
            continue
        try:
            value = Fraction(rec[1].strip())
            if key == "limit":
                limit = value
            else:
                rows.append((int(key), value))
        except (IndexError, ValueError) as exc:
            raise DataFileError(path, f"bad row {rec!r}: {exc}") from None
    try:
        return DiscriminantTable(tuple(rows), flavor, source, limit)
    except DomainError as exc:
        raise DataFileError(path, str(exc)) from None


def degree_bound(bound, table: DiscriminantTable) -> int | None:
    """Largest degree not excluded by the table for root discriminant <= bound.

    Returns None (unbounded) when the bound reaches the table's limit or
    exceeds every tabulated entry.
    """
    if not table.rows:
        raise DomainError("empty discriminant table")
    bound = Fraction(bound)
    if table.limit is not None and bound >= table.limit:
        return None
    for degree, lower in table.rows:
        if lower > bound:
            return degree - 1
    return None


# -- conductor-discriminant comparison ------------------------------------

def cft_exclusion_exponents(degree_k: int) -> tuple[int, Fraction]:
    """2-adic exponents (lower bound for v_2(disc K), cap from the wild bound).

    K is abelian over the quartic field Q(i, sqrt(-19)) (discriminant
    2^4 19^2), ramified only above (1+i), and properly contains the degree-12
    field F.  With m = [K:F]:

    * (2^4)^(d/4) from the base discriminant,
    * two characters through F of conductor (1+i), norm 2^2 each,
    * 3(m-1) characters outside F of conductor (1+i)^c, norm 2^(2c) each.

    c >= 3 in general.  For m = 2 the group is cyclic of order 6 and every
    character outside F has quadratic 2-part; over a 2-adic field with
    absolute ramification index 2, ramified quadratic conductor exponents
    lie in {2, 4, 5}, so c >= 4 there.  The 19-exponents (d/2) agree on
    both sides and are omitted.
    """
    if degree_k % 12 or degree_k < 24:
        raise DomainError("degree of K must be a multiple of 12 and at least 24")
    m = degree_k // 12
    c = 4 if m == 2 else 3
    lower = degree_k + 4 + 2 * c * 3 * (m - 1)
    return lower, wild_disc_valuation_bound(2, degree_k)


def cft_exclusion_check(degree_k: int) -> bool:
    """True iff the conductor-discriminant lower bound exceeds the wild cap."""
    lower, cap = cft_exclusion_exponents(degree_k)
    return lower > cap
