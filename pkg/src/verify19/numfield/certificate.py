"""Verification of field certificates and unit certificates."""

from __future__ import annotations

from dataclasses import dataclass

from ..arith.integers import factorint
from ..arith.realroots import count_real_roots
from ..report import CheckReport
from .field import FieldElement, NumberField
from .ideals import dedekind_criterion, is_p_maximal


def verify_field_certificate(nf: NumberField) -> CheckReport:
    """Check ring closure, discriminant, signature and local maximality.

    Each failing condition is named in the returned report.
    """
    rep = CheckReport(f"field certificate {nf.name}")
    n = nf.degree
    closed = all(c.denominator == 1 for row in nf.table for v in row for c in v)
    rep.add("basis is ring-closed", closed)
    rep.add("basis contains 1", nf.one.is_integral())
    rep.add("basis contains theta", nf.theta.is_integral())

    disc = nf.basis_disc()
    rep.add("disc(basis) = field_disc", disc == nf.field_disc, f"computed {disc}, certified {nf.field_disc}")

    r1, r2 = nf.signature
    rep.add("r1 + 2 r2 = degree", r1 + 2 * r2 == n, f"({r1}, {r2}) for degree {n}")
    real = count_real_roots(nf.poly)
    rep.add("r1 = number of real roots", real == r1, f"{real} real roots")

    if not (closed and nf.one.is_integral() and nf.theta.is_integral()):
        return rep
    index = nf.basis_index
    for q, e in sorted(factorint(nf.poly_disc).items()) if abs(nf.poly_disc) > 1 else []:
        if e < 2:
            continue
        if index.denominator == 1 and index.numerator % q and dedekind_criterion(nf.poly, q):
            rep.add(f"{q}-maximal (Dedekind)", True)
        else:
            rep.add(f"{q}-maximal (ring of multipliers)", is_p_maximal(nf, q))
    return rep


@dataclass(frozen=True)
class UnitCertificate:
    field: NumberField
    torsion: FieldElement
    fundamental_units: tuple[FieldElement, ...]
    torsion_order: int | None = None

    @classmethod
    def from_field(cls, nf: NumberField) -> UnitCertificate:
        tors = nf.torsion_element()
        if tors is None:
            tors = -nf.one
        return cls(nf, tors, tuple(nf.unit_elements()), nf.torsion_order)

    @property
    def generators(self) -> tuple[FieldElement, ...]:
        return (self.torsion,) + self.fundamental_units

    def verify(self) -> CheckReport:
        nf = self.field
        rep = CheckReport(f"unit certificate {nf.name}")
        r1, r2 = nf.signature
        rep.add(
            "unit count = r1 + r2 - 1",
            len(self.fundamental_units) == r1 + r2 - 1,
            f"{len(self.fundamental_units)} listed, rank {r1 + r2 - 1}",
        )
        for label, u in [("torsion", self.torsion)] + [(f"unit {k}", u) for k, u in enumerate(self.fundamental_units)]:
            rep.add(f"{label} integral", u.is_integral(), repr(u))
            norm = u.norm()
            rep.add(f"{label} norm is +-1", abs(norm) == 1, f"norm {norm}")
        if self.torsion_order:
            w = self.torsion_order
            t = self.torsion
            ok = t**w == nf.one and all(t ** (w // q) != nf.one for q in factorint(w))
            rep.add("torsion generator has the stated order", ok, f"order {w}")
        return rep
