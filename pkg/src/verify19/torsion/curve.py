"""Elliptic curves over Q in long Weierstrass form, and their 2-torsion fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith.galois import is_irreducible_cubic
from ..arith.integers import squarefree_class
from ..arith.poly import Polynomial, poly_discriminant
from ..errors import DomainError
from ..numfield.field import NumberField
from ..numfield.roots import has_root
from ..report import CheckReport


@dataclass(frozen=True)
class EllipticCurveQ:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.discriminant == 0:
            raise DomainError(f"singular curve {self}")

    @property
    def b2(self) -> Fraction:
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self) -> Fraction:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> Fraction:
        return self.a3**2 + 4 * self.a6

    @property
    def b8(self) -> Fraction:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        return a1**2 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3**2 - a4**2

    @property
    def discriminant(self) -> Fraction:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    def __str__(self):
        return f"[{self.a1}, {self.a2}, {self.a3}, {self.a4}, {self.a6}]"


X0_19 = EllipticCurveQ(0, 1, 1, -9, -15)


def two_division_cubic(e: EllipticCurveQ) -> Polynomial:
    """4x^3 + b2 x^2 + 2 b4 x + b6, whose roots are x(P) for P of exact order 2."""
    return Polynomial([e.b6, 2 * e.b4, e.b2, 4])


def four_division_cofactor(e: EllipticCurveQ) -> Polynomial:
    """psi_4 / psi_2: roots are x(P) for P of exact order 4."""
    b2, b4, b6, b8 = e.b2, e.b4, e.b6, e.b8
    return Polynomial([b4 * b8 - b6**2, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2])


QUADRATIC_M19 = Polynomial([19, 0, 1])


def verify_two_torsion_field(e: EllipticCurveQ, target: NumberField, quadratic: Polynomial = QUADRATIC_M19) -> CheckReport:
    """Certify that the splitting field of the 2-division cubic is ``target``.

    An irreducible cubic with discriminant class d has an S3 splitting field
    of degree 6 containing Q(sqrt d).  If a degree-6 target contains
    Q(sqrt d) and one root, it contains the splitting field, hence equals it.
    """
    target.require_verified()
    rep = CheckReport(f"2-torsion field of {e} is {target.name}")
    cubic = two_division_cubic(e)
    rep.data["cubic"] = str(cubic)
    rep.add("2-division cubic irreducible over Q", is_irreducible_cubic(cubic))
    disc_class = squarefree_class(poly_discriminant(cubic))
    quad_class = squarefree_class(poly_discriminant(quadratic))
    rep.data["disc_class"] = disc_class
    rep.add("disc class of cubic = disc class of quadratic", disc_class == quad_class,
            f"{disc_class} vs {quad_class}")
    rep.add("target has degree 6", target.degree == 6, str(target.degree))
    for label, poly in (("quadratic", quadratic), ("cubic", cubic)):
        name = f"{label} has a root in target"
        if poly.degree > target.degree:
            rep.add(name, False, f"degree {poly.degree} exceeds {target.degree}")
            continue
        res = has_root(target, poly)
        if res.found:
            rep.add(name, True, f"root {list(map(str, res.witness.coords))}")
        elif res.certified:
            rep.add(name, False, f"no root modulo a prime above {res.obstruction[0]} of degree {res.obstruction[1]}")
        else:
            rep.inconclusive.append(f"{name}: no root found and no obstruction below the prime cap")
    return rep
