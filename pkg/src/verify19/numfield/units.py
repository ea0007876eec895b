"""Finite abelian groups, (O/m)*, unit images and ray class groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Sequence

from ..arith.linalg import smith_normal_form
from ..arith.realroots import isolate_real_roots, sign_at_root
from ..errors import PreconditionError, ResourceError, UnsupportedCaseError
from .certificate import UnitCertificate
from .classgroup import verify_class_number_one
from .field import FieldElement, NumberField
from .ideals import Ideal

DEFAULT_RESIDUE_CAP = 10**6


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Product of cyclic groups Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... | d_k."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        ds = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in ds):
            raise ValueError(f"invariant factors must be >= 2: {ds}")
        if any(b % a for a, b in zip(ds, ds[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain: {ds}")
        object.__setattr__(self, "invariant_factors", ds)

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]], k: int) -> FiniteAbelianGroup:
        diag, _ = smith_normal_form(relations, k)
        if any(d == 0 for d in diag):
            raise ValueError("relations do not define a finite group")
        return cls(tuple(sorted(d for d in diag if d > 1)))

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"C{d}" for d in self.invariant_factors)


@dataclass
class ResidueUnitGroup:
    """(O/m)* with a discrete-logarithm table.

    ``dlog`` maps a canonical residue to its exponent vector with respect
    to cyclic factors of orders ``cyclic_orders`` (Smith coordinates, trivial
    factors dropped).
    """

    modulus: Ideal
    structure: FiniteAbelianGroup
    cyclic_orders: tuple[int, ...]
    table: dict = field(repr=False)

    def dlog(self, x: FieldElement) -> tuple[int, ...]:
        r = self.modulus.reduce(x)
        if r not in self.table:
            raise PreconditionError(f"{x} is not a unit modulo the modulus")
        return self.table[r]

    @property
    def order(self) -> int:
        return self.structure.order


def unit_quotient_structure(nf: NumberField, m: Ideal, cap: int = DEFAULT_RESIDUE_CAP) -> ResidueUnitGroup:
    """Build (O/m)* by enumerating residues."""
    if not m.is_integral():
        raise PreconditionError("modulus must be an integral ideal")
    size = m.residue_count()
    if size > cap:
        raise ResourceError(f"|O/m| = {size} exceeds the residue cap {cap}")
    one = m.reduce(nf.one)

    def mul(a, b):
        return m.reduce(nf.element(a) * nf.element(b))

    units = [r for r in m.residues() if _is_unit_mod(nf, m, r)]
    total = len(units)
    # grow a subgroup H one generator at a time, tracking exponent vectors
    h: dict[tuple, tuple] = {one: ()}
    gens: list[tuple] = []
    relations: list[list[int]] = []
    for g in units:
        if g in h:
            continue
        k = len(gens)
        power, e = g, 1
        while power not in h:
            power = mul(power, g)
            e += 1
        rel = list(h[power]) + [0] * (k - len(h[power])) + [-e]
        relations = [r + [0] for r in relations] + [rel]
        gens.append(g)
        new = {}
        step = one
        for i in range(e):
            for x, vec in h.items():
                y = mul(x, step)
                new[y] = tuple(vec) + (0,) * (k - len(vec)) + (i,)
            step = mul(step, g)
        h = new
        if len(h) == total:
            break
    k = len(gens)
    if not gens:
        return ResidueUnitGroup(m, FiniteAbelianGroup(()), (), {one: ()})
    diag, v = smith_normal_form(relations, k)
    keep = [j for j in range(k) if diag[j] != 1]
    orders = tuple(diag[j] for j in keep)
    table = {}
    for x, vec in h.items():
        full = list(vec) + [0] * (k - len(vec))
        new_coords = [sum(full[i] * v[i][j] for i in range(k)) for j in range(k)]
        table[x] = tuple(new_coords[j] % diag[j] for j in keep)
    return ResidueUnitGroup(m, FiniteAbelianGroup(orders), orders, table)


def _is_unit_mod(nf: NumberField, m: Ideal, r: tuple[int, ...]) -> bool:
    x = nf.element(r)
    if x.is_zero():
        return m.norm() == 1
    return (Ideal.principal(nf, x) + m).norm() == 1


def _quotient_order(orders: Sequence[int], images: Iterable[Sequence[int]]) -> FiniteAbelianGroup:
    k = len(orders)
    rel = [[d if i == j else 0 for i in range(k)] for j, d in enumerate(orders)]
    rel += [list(v) for v in images]
    if k == 0:
        return FiniteAbelianGroup(())
    return FiniteAbelianGroup.from_relations(rel, k)


def unit_image_order(nf: NumberField, units: UnitCertificate, m: Ideal, group: ResidueUnitGroup | None = None) -> int:
    """Order of the image of the certified units in (O/m)*."""
    group = group or unit_quotient_structure(nf, m)
    for u in units.generators:
        if (Ideal.principal(nf, u) + m).norm() != 1:
            raise PreconditionError(f"{u} is not coprime to the modulus")
    images = [group.dlog(u) for u in units.generators]
    return group.order // _quotient_order(group.cyclic_orders, images).order


def real_signs(nf: NumberField, x: FieldElement) -> tuple[int, ...]:
    """Signs of x at the real embeddings, ordered by increasing real root."""
    g = x.as_polynomial()
    return tuple(sign_at_root(g, nf.poly, lo, hi) for lo, hi in isolate_real_roots(nf.poly))


def ray_class_group(
    nf: NumberField,
    units: UnitCertificate,
    m: Ideal,
    infinite_part: Iterable[int] = (),
    class_number_report=None,
) -> FiniteAbelianGroup:
    """Cl_m for a field of class number one: ((O/m)* x signs) / image of O*.

    ``infinite_part`` lists real places by index into the sorted real roots.
    """
    rep = class_number_report or verify_class_number_one(nf)
    if not rep.passed:
        raise UnsupportedCaseError(f"class number one not certified for {nf.name}: {rep.summary()}")
    places = sorted(set(infinite_part))
    r1 = nf.signature[0]
    if any(p < 0 or p >= r1 for p in places):
        raise PreconditionError(f"real places must lie in 0..{r1 - 1}")
    group = unit_quotient_structure(nf, m)
    for u in units.generators:
        if (Ideal.principal(nf, u) + m).norm() != 1:
            raise PreconditionError(f"{u} is not coprime to the modulus")
    orders = list(group.cyclic_orders) + [2] * len(places)
    images = []
    for u in units.generators:
        vec = list(group.dlog(u))
        if places:
            signs = real_signs(nf, u)
            vec += [0 if signs[p] > 0 else 1 for p in places]
        images.append(vec)
    return _quotient_order(orders, images)
