"""Small finite groups as multiplication tables, and the scans over them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

from ..arith.integers import factorint
from ..errors import PreconditionError, VerifyError
from ..report import CheckReport


class CatalogIntegrityError(VerifyError):
    """A group table fails associativity, identity or inverse checks."""


@dataclass(frozen=True, eq=False)
class SmallGroup:
    """Group on {0..n-1} given by its multiplication table; 0 is the identity."""

    name: str
    table: tuple[tuple[int, ...], ...]
    labels: tuple = ()

    @classmethod
    def from_function(cls, name: str, elements: Sequence[Hashable], mul: Callable, identity: Hashable) -> SmallGroup:
        elems = [identity] + [e for e in elements if e != identity]
        index = {e: i for i, e in enumerate(elems)}
        try:
            table = tuple(tuple(index[mul(a, b)] for b in elems) for a in elems)
        except KeyError as exc:
            raise CatalogIntegrityError(f"{name}: not closed under multiplication ({exc})") from None
        return cls(name, table, tuple(elems))

    @classmethod
    def generated(cls, name: str, gens: Sequence[Hashable], mul: Callable, identity: Hashable) -> SmallGroup:
        """Closure of ``gens`` under ``mul``."""
        seen = [identity]
        known = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = mul(a, g)
                    if b not in known:
                        known.add(b)
                        seen.append(b)
                        nxt.append(b)
            frontier = nxt
        return cls.from_function(name, seen, mul, identity)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def _inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def inv(self, a: int) -> int:
        return self._inverses[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def check_integrity(self) -> None:
        n = self.order
        t = self.table
        if any(len(row) != n or sorted(row) != list(range(n)) for row in t):
            raise CatalogIntegrityError(f"{self.name}: rows are not permutations")
        if any(t[0][a] != a or t[a][0] != a for a in range(n)):
            raise CatalogIntegrityError(f"{self.name}: 0 is not an identity")
        if any(t[t[a].index(0)][a] != 0 for a in range(n)):
            raise CatalogIntegrityError(f"{self.name}: missing inverses")
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise CatalogIntegrityError(f"{self.name}: not associative at {(a, b, c)}")

    # -- subgroups ------------------------------------------------------------

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        sub = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in sub:
                        sub.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(sub)

    def normal_closure(self, gens: Iterable[int]) -> frozenset[int]:
        conj = {self.mul(self.mul(g, x), self.inv(g)) for x in gens for g in self.elements}
        return self.closure(conj)

    def commutator(self, a: int, b: int) -> int:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    @cached_property
    def derived_subgroup(self) -> frozenset[int]:
        return self.closure({self.commutator(a, b) for a in self.elements for b in self.elements})

    def is_abelian(self) -> bool:
        return all(self.mul(a, b) == self.mul(b, a) for a in self.elements for b in self.elements)

    def is_cyclic(self) -> bool:
        return any(self.element_order(a) == self.order for a in self.elements)

    def p_elements(self, p: int) -> frozenset[int]:
        return frozenset(a for a in self.elements if set(factorint(self.element_order(a))) <= {p})

    def quotient_is_cyclic(self, normal: frozenset[int]) -> bool:
        index = self.order // len(normal)
        for a in self.elements:
            k, x = 1, a
            while x not in normal:
                x = self.mul(x, a)
                k += 1
            if k == index:
                return True
        return False

    def abelianization(self) -> tuple[int, ...]:
        """Invariant factors of G / D(G)."""
        d = self.derived_subgroup
        cosets = {}
        for a in self.elements:
            key = frozenset(self.mul(a, h) for h in d)
            cosets.setdefault(key, a)
        reps = list(cosets.values())

        def coset_order(a):
            k, x = 1, a
            while x not in d:
                x = self.mul(x, a)
                k += 1
            return k

        orders = [coset_order(a) for a in reps]
        parts_by_prime = []
        for p, e in (factorint(len(reps)) if len(reps) > 1 else {}).items():
            # |A[p^k]| = #{x : ord(x) | p^k}; factors of order >= p^k number log_p(|A[p^k]| / |A[p^(k-1)]|)
            sizes = [1]
            while sizes[-1] < p**e:
                k = len(sizes)
                sizes.append(sum(1 for o in orders if (p**k) % o == 0))
            at_least = [_log(sizes[k] // sizes[k - 1], p) for k in range(1, len(sizes))] + [0]
            parts = []
            for k in range(len(at_least) - 1):
                parts += [p ** (k + 1)] * (at_least[k] - at_least[k + 1])
            parts_by_prime.append(sorted(parts, reverse=True))
        length = max((len(v) for v in parts_by_prime), default=0)
        out = []
        for i in range(length):
            d_i = 1
            for v in parts_by_prime:
                if i < len(v):
                    d_i *= v[i]
            out.append(d_i)
        return tuple(sorted(out))


def _log(n: int, p: int) -> int:
    r = 0
    while n > 1:
        n //= p
        r += 1
    return r


# -- catalog constructions ---------------------------------------------------

def cyclic(n: int) -> SmallGroup:
    return SmallGroup.from_function(f"C{n}", list(range(n)), lambda a, b: (a + b) % n, 0)


def direct_product(name: str, g: SmallGroup, h: SmallGroup) -> SmallGroup:
    elems = [(a, b) for a in g.elements for b in h.elements]
    return SmallGroup.from_function(name, elems, lambda x, y: (g.mul(x[0], y[0]), h.mul(x[1], y[1])), (0, 0))


def dihedral(n: int) -> SmallGroup:
    """Symmetries of the n-gon as pairs (rotation, reflection flag)."""

    def mul(a, b):
        r1, s1 = a
        r2, s2 = b
        return ((r1 + (-r2 if s1 else r2)) % n, s1 ^ s2)

    return SmallGroup.from_function(f"D{n}", [(r, s) for r in range(n) for s in (0, 1)], mul, (0, 0))


def symmetric3() -> SmallGroup:
    def compose(p, q):  # apply q then p
        return tuple(p[q[i]] for i in range(3))

    return SmallGroup.generated("S3", [(1, 2, 0), (1, 0, 2)], compose, (0, 1, 2))


_QUAT = {("1", u): u for u in "1ijk"}
_QUAT.update({(u, "1"): u for u in "1ijk"})
_QUAT.update({("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1", ("i", "j"): "k", ("j", "k"): "i",
              ("k", "i"): "j", ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"})


def quaternion() -> SmallGroup:
    def mul(a, b):
        s1, u1 = a
        s2, u2 = b
        r = _QUAT[(u1, u2)]
        s = s1 * s2 * (-1 if r.startswith("-") else 1)
        return (s, r.lstrip("-"))

    return SmallGroup.from_function("Q8", [(s, u) for s in (1, -1) for u in "1ijk"], mul, (1, "1"))


def heisenberg(p: int) -> SmallGroup:
    """Upper unitriangular 3x3 matrices mod p, as (a, b, c) = [[1,a,c],[0,1,b],[0,0,1]]."""

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return SmallGroup.from_function(f"Heis({p})", list(product(range(p), repeat=3)), mul, (0, 0, 0))


def metacyclic_27() -> SmallGroup:
    """<a, b | a^9 = b^3 = 1, b a b^-1 = a^4>, the order-27 group of exponent 9."""

    def mul(x, y):
        return ((x[0] + pow(4, x[1], 9) * y[0]) % 9, (x[1] + y[1]) % 3)

    return SmallGroup.from_function("C9 : C3", [(i, j) for i in range(9) for j in range(3)], mul, (0, 0))


def catalog_order_le_11() -> list[SmallGroup]:
    c2, c3, c4 = cyclic(2), cyclic(3), cyclic(4)
    out = [cyclic(n) for n in range(1, 12)]
    out += [
        direct_product("C2 x C2", c2, c2),
        direct_product("C2 x C4", c2, c4),
        direct_product("C2 x C2 x C2", direct_product("C2 x C2", c2, c2), c2),
        symmetric3(),
        dihedral(4),
        quaternion(),
        direct_product("C3 x C3", c3, c3),
        dihedral(5),
    ]
    return out


def catalog_three_groups() -> list[SmallGroup]:
    c3, c9 = cyclic(3), cyclic(9)
    c3c3 = direct_product("C3 x C3", c3, c3)
    return [
        c3,
        c9,
        c3c3,
        cyclic(27),
        direct_product("C9 x C3", c9, c3),
        direct_product("C3 x C3 x C3", c3c3, c3),
        heisenberg(3),
        metacyclic_27(),
    ]


# -- scans -------------------------------------------------------------------

def psi_subgroup(g: SmallGroup) -> frozenset[int]:
    """Smallest normal subgroup containing D(G) and every 3-Sylow subgroup."""
    return g.normal_closure(set(g.derived_subgroup) | set(g.p_elements(3)))


def _prime_power(n: int) -> int | None:
    f = factorint(n) if n > 1 else {}
    return next(iter(f)) if len(f) == 1 else None


def lemma_scan_order_le_11(groups: Sequence[SmallGroup] | None = None) -> CheckReport:
    """Viable H (H = Psi(H) or H/Psi(H) non-cyclic) are non-cyclic 2-groups or 3-groups."""
    rep = CheckReport("groups of order <= 11")
    rows = []
    for h in groups or catalog_order_le_11():
        h.check_integrity()
        psi = psi_subgroup(h)
        viable = len(psi) == h.order or not h.quotient_is_cyclic(psi)
        p = _prime_power(h.order)
        if not viable:
            kind = "excluded"
        elif h.order == 1:
            kind = "trivial"
        elif p == 3:
            kind = "3-group"
        elif p == 2 and not h.is_cyclic():
            kind = "non-cyclic 2-group"
        else:
            kind = "other"
        rows.append({"group": h.name, "order": h.order, "psi_order": len(psi), "viable": viable, "kind": kind})
        rep.add(f"{h.name}: {kind}", kind != "other", f"|Psi| = {len(psi)}")
    rep.data["groups"] = rows
    return rep


def three_group_abelianization_scan(groups: Sequence[SmallGroup] | None = None) -> CheckReport:
    """Among 3-groups of order <= 27 only C3 has abelianization C3."""
    rep = CheckReport("3-groups of order <= 27")
    rows = []
    for h in groups or catalog_three_groups():
        h.check_integrity()
        ab = h.abelianization()
        is_c3 = h.order == 3
        rows.append({"group": h.name, "order": h.order, "abelianization": list(ab)})
        rep.add(f"{h.name}: abelianization {_fmt(ab)}", (ab == (3,)) == is_c3)
    witnesses = [r["group"] for r in rows if r["abelianization"] == [3]]
    rep.add("C3 is the unique witness", witnesses == ["C3"], ", ".join(witnesses))
    rep.data["groups"] = rows
    return rep


def _fmt(factors: Sequence[int]) -> str:
    return " x ".join(f"C{d}" for d in factors) if factors else "trivial"


def pgroup_generation_check(g: SmallGroup, gens: Sequence[int]) -> bool:
    """Elements whose images generate G/D(G) generate the p-group G."""
    if g.order > 1 and _prime_power(g.order) is None:
        raise PreconditionError(f"{g.name} is not a p-group")
    if len(g.closure(set(gens) | set(g.derived_subgroup))) != g.order:
        raise PreconditionError("generator images do not generate the abelianization")
    return len(g.closure(gens)) == g.order


def element_by_label(g: SmallGroup, label) -> int:
    return g.labels.index(label)
