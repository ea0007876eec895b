"""Number fields given by certified integral bases, and their elements."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from ..arith.integers import factorint
from ..arith.linalg import det, inverse, matmul, vecmat
from ..arith.poly import Polynomial, poly_discriminant
from ..errors import DataFileError, DomainError, PreconditionError


def _parse_fraction(s) -> Fraction:
    return Fraction(s) if not isinstance(s, Fraction) else s


class FieldElement:
    """Element of a number field stored by coordinates in the integral basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Iterable):
        cs = tuple(_parse_fraction(c) for c in coords)
        if len(cs) != field.degree:
            raise DomainError(f"expected {field.degree} coordinates, got {len(cs)}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", cs)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _wrap(self, other) -> FieldElement:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise DomainError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, (a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, (-a for a in self.coords))

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, (a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, (a * other for a in self.coords))
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field._multiply(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return self * self._wrap(other).inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"{self.field.name}[{', '.join(str(c) for c in self.coords)}]"

    # -- invariants -----------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def int_coords(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise DomainError(f"{self} is not integral")
        return tuple(int(c) for c in self.coords)

    def mult_matrix(self) -> list[list[Fraction]]:
        """Row i holds the coordinates of b_i * self."""
        return [list(self.field._multiply(e, self.coords)) for e in self.field._unit_vectors]

    def norm(self) -> Fraction:
        return det(self.mult_matrix())

    def trace(self) -> Fraction:
        m = self.mult_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # solve y * M = e_one where M = mult matrix of self
        minv = inverse(self.mult_matrix())
        return FieldElement(self.field, vecmat(self.field.one.coords, minv))

    def power_coords(self) -> list[Fraction]:
        return vecmat(self.coords, self.field.basis)

    def as_polynomial(self) -> Polynomial:
        """Representative in Q[t] of degree < n, evaluated at the root."""
        return Polynomial(self.power_coords())

    def charpoly(self) -> Polynomial:
        """Characteristic polynomial of multiplication by self (monic)."""
        m = self.mult_matrix()
        n = len(m)
        # Faddeev-LeVerrier; exact over Q
        coeffs = [Fraction(1)]
        mk = [[Fraction(0)] * n for _ in range(n)]
        ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        c = Fraction(1)
        for k in range(1, n + 1):
            mk = matmul(m, [[mk[i][j] + c * ident[i][j] for j in range(n)] for i in range(n)])
            c = -sum((mk[i][i] for i in range(n)), Fraction(0)) / k
            coeffs.append(c)
        return Polynomial(reversed(coeffs))


@dataclass
class NumberField:
    """Q[t]/(f) with a certified integral basis.

    ``basis`` rows express the integral basis elements in the power basis
    1, theta, ..., theta^{n-1}.
    """

    name: str
    poly: Polynomial
    basis: list
    field_disc: int
    signature: tuple
    units: list = field(default_factory=list)
    torsion: list | None = None
    torsion_order: int | None = None
    source: str = ""

    def __post_init__(self):
        self.poly = self.poly if isinstance(self.poly, Polynomial) else Polynomial(self.poly)
        if self.poly.lc != 1 or not self.poly.is_integral():
            raise PreconditionError(f"{self.name}: defining polynomial must be monic with integer coefficients")
        self.basis = [[_parse_fraction(x) for x in row] for row in self.basis]
        n = self.poly.degree
        if len(self.basis) != n or any(len(r) != n for r in self.basis):
            raise DomainError(f"{self.name}: integral basis must be {n}x{n}")
        self.signature = tuple(self.signature)
        try:
            self._basis_inv = inverse(self.basis)
        except ZeroDivisionError:
            raise DomainError(f"{self.name}: integral basis is singular") from None
        self._unit_vectors = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        self._table = self._build_table()

    # -- construction helpers -------------------------------------------
    @property
    def degree(self) -> int:
        return self.poly.degree

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other

    def __repr__(self):
        return f"NumberField({self.name}, {self.poly})"

    def _power_mul(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
        prod = Polynomial(a) * Polynomial(b)
        rem = prod % self.poly
        return [rem[i] for i in range(self.degree)]

    def _build_table(self):
        n = self.degree
        table = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                pc = self._power_mul(self.basis[i], self.basis[j])
                table[i][j] = table[j][i] = tuple(vecmat(pc, self._basis_inv))
        return table

    def _multiply(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple:
        n = self.degree
        out = [Fraction(0)] * n
        table = self._table
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = table[i]
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = ai * bj
                for k, t in enumerate(row[j]):
                    if t:
                        out[k] += c * t
        return tuple(out)

    def element(self, coords: Iterable) -> FieldElement:
        return FieldElement(self, coords)

    def from_power(self, power_coords: Iterable) -> FieldElement:
        pc = list(power_coords)
        pc = [_parse_fraction(c) for c in pc] + [Fraction(0)] * (self.degree - len(pc))
        if len(pc) > self.degree:
            reduced = Polynomial(pc) % self.poly
            pc = [reduced[i] for i in range(self.degree)]
        return FieldElement(self, vecmat(pc, self._basis_inv))

    def from_polynomial(self, g: Polynomial) -> FieldElement:
        """The element g(theta)."""
        r = g % self.poly
        return self.from_power([r[i] for i in range(self.degree)])

    def scalar(self, c) -> FieldElement:
        return self.from_power([c])

    @cached_property
    def one(self) -> FieldElement:
        return self.scalar(1)

    @cached_property
    def zero(self) -> FieldElement:
        return FieldElement(self, [0] * self.degree)

    @cached_property
    def theta(self) -> FieldElement:
        if self.degree == 1:
            return self.from_power([-self.poly[0]])
        return self.from_power([0, 1])

    def basis_element(self, i: int) -> FieldElement:
        return FieldElement(self, self._unit_vectors[i])

    @property
    def table(self):
        return self._table

    # -- derived invariants -------------------------------------------
    @cached_property
    def poly_disc(self) -> int:
        return int(poly_discriminant(self.poly))

    @cached_property
    def basis_index(self) -> Fraction:
        """[O : Z[theta]] = 1 / |det(basis)|."""
        return 1 / abs(det(self.basis))

    def trace_form(self) -> list[list[Fraction]]:
        n = self.degree
        traces = [self.basis_element(i).trace() for i in range(n)]
        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[i][j] = sum((c * traces[k] for k, c in enumerate(self._table[i][j])), Fraction(0))
        return out

    def basis_disc(self) -> Fraction:
        return det(self.trace_form())

    def unit_elements(self) -> list[FieldElement]:
        return [self.element(u) for u in self.units]

    def torsion_element(self) -> FieldElement | None:
        return None if self.torsion is None else self.element(self.torsion)

    @cached_property
    def verification(self):
        from .certificate import verify_field_certificate

        return verify_field_certificate(self)

    def require_verified(self):
        if not self.verification.passed:
            raise PreconditionError(f"{self.name}: field certificate not verified ({self.verification.failures()})")

    def disc_primes(self) -> list[int]:
        return sorted(factorint(self.field_disc)) if abs(self.field_disc) > 1 else []

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "defining_poly": [int(c) for c in self.poly.coeffs],
            "integral_basis": [[str(x) for x in row] for row in self.basis],
            "field_disc": self.field_disc,
            "signature": list(self.signature),
            "units": [[str(x) for x in u] for u in self.units],
            "torsion": None if self.torsion is None else [str(x) for x in self.torsion],
            "torsion_order": self.torsion_order,
            "source": self.source,
        }

    @classmethod
    def from_json(cls, data: dict, name: str | None = None) -> NumberField:
        return cls(
            name=data.get("name", name or "K"),
            poly=Polynomial(data["defining_poly"]),
            basis=data["integral_basis"],
            field_disc=int(data["field_disc"]),
            signature=tuple(data["signature"]),
            units=[[Fraction(x) for x in u] for u in data.get("units", [])],
            torsion=None if data.get("torsion") is None else [Fraction(x) for x in data["torsion"]],
            torsion_order=data.get("torsion_order"),
            source=data.get("source", ""),
        )


def load_field(path: str | Path) -> NumberField:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except FileNotFoundError:
        raise DataFileError(path, "file not found") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise DataFileError(path, f"unreadable certificate: {exc}") from None
    for key in ("defining_poly", "integral_basis", "field_disc", "signature"):
        if key not in data:
            raise DataFileError(path, f"missing key {key!r}")
    try:
        return NumberField.from_json(data, name=path.stem)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise DataFileError(path, f"invalid certificate: {exc}") from None
