"""Finite modules: F_2[G]-modules from matrices, and unipotent actions over Z/n."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from ..arith.linalg import nullspace_mod, rref_mod
from ..errors import DomainError, PreconditionError, ResourceError
from .groups import SmallGroup, symmetric3

Mat = tuple[tuple[int, ...], ...]


def mat_mul(a: Mat, b: Mat, n: int) -> Mat:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) % n for j in range(len(b[0])))
                 for i in range(len(a)))


def mat_vec(a: Mat, v: Sequence[int], n: int) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) % n for row in a)


def mat_identity(d: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))


def _freeze(m, n: int) -> Mat:
    return tuple(tuple(int(x) % n for x in row) for row in m)


@dataclass(frozen=True, eq=False)
class F2Module:
    """F_2^d with G acting on column vectors; ``matrices[k]`` is the image of ``gens[k]``."""

    group: SmallGroup
    gens: tuple[int, ...]
    matrices: tuple[Mat, ...]
    rho: dict = field(init=False, repr=False)

    def __post_init__(self):
        mats = tuple(_freeze(m, 2) for m in self.matrices)
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "gens", tuple(self.gens))
        if len(mats) != len(self.gens):
            raise DomainError("one matrix per generator")
        d = self.dim
        if any(len(m) != d or any(len(r) != d for r in m) for m in mats):
            raise DomainError("matrices must be square of a common size")
        g = self.group
        rho = {0: mat_identity(d)}
        frontier = [0]
        while frontier:
            nxt = []
            for a in frontier:
                for s, m in zip(self.gens, mats):
                    b = g.mul(a, s)
                    img = mat_mul(rho[a], m, 2)
                    if b not in rho:
                        rho[b] = img
                        nxt.append(b)
            frontier = nxt
        if len(rho) != g.order:
            raise DomainError("generators do not generate the group")
        for a in g.elements:
            for b in g.elements:
                if mat_mul(rho[a], rho[b], 2) != rho[g.mul(a, b)]:
                    raise DomainError("matrices do not satisfy the group relations")
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return len(self.matrices[0]) if self.matrices else 0


def trivial_module(group: SmallGroup, gens: Sequence[int], dim: int = 1) -> F2Module:
    return F2Module(group, tuple(gens), tuple(mat_identity(dim) for _ in gens))


def direct_sum(m1: F2Module, m2: F2Module) -> F2Module:
    if m1.group is not m2.group or m1.gens != m2.gens:
        raise DomainError("modules over different groups or generators")
    d1, d2 = m1.dim, m2.dim
    mats = []
    for a, b in zip(m1.matrices, m2.matrices):
        rows = [list(r) + [0] * d2 for r in a] + [[0] * d1 + list(r) for r in b]
        mats.append(rows)
    return F2Module(m1.group, m1.gens, tuple(mats))


def standard_s3_module() -> F2Module:
    """The 2-dimensional irreducible F_2[S3]-module (sum-zero vectors in F_2^3)."""
    s3 = symmetric3()
    rot = s3.labels.index((1, 2, 0))
    swap = s3.labels.index((1, 0, 2))
    return F2Module(s3, (rot, swap), (((0, 1), (1, 1)), ((0, 1), (1, 0))))


# -- subspaces ---------------------------------------------------------------

Subspace = tuple[tuple[int, ...], ...]  # reduced row echelon basis over F_2


def span(vectors: Sequence[Sequence[int]], d: int) -> Subspace:
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return ()
    red, _ = rref_mod(rows, 2)
    return tuple(tuple(r) for r in red if any(r))


def invariant_span(m: F2Module, vectors: Sequence[Sequence[int]]) -> Subspace:
    basis = span(vectors, m.dim)
    while True:
        images = [mat_vec(a, v, 2) for a in m.matrices for v in basis]
        new = span(list(basis) + images, m.dim)
        if new == basis:
            return basis
        basis = new


def _check_dim(m: F2Module, limit: int):
    if m.dim > limit:
        raise ResourceError(f"dimension {m.dim} exceeds the exhaustive-scan limit {limit}")


def module_is_irreducible(m: F2Module) -> bool:
    """No proper nonzero invariant subspace; every nonzero vector generates M."""
    _check_dim(m, 8)
    if m.dim == 0:
        return False
    return all(len(invariant_span(m, [v])) == m.dim for v in product((0, 1), repeat=m.dim) if any(v))


def _intertwiners(a: F2Module, b: F2Module) -> list:
    """Basis of {X : X rho_a(g) = rho_b(g) X}, X of shape dim_b x dim_a, flattened row-major."""
    da, db = a.dim, b.dim
    eqs = []
    for ma, mb in zip(a.matrices, b.matrices):
        for i in range(db):
            for j in range(da):
                row = [0] * (db * da)
                for k in range(da):  # (X ma)[i][j] = sum_k X[i][k] ma[k][j]
                    row[i * da + k] += ma[k][j]
                for k in range(db):  # (mb X)[i][j] = sum_k mb[i][k] X[k][j]
                    row[k * da + j] -= mb[i][k]
                eqs.append([x % 2 for x in row])
    return nullspace_mod(eqs, 2, db * da) if eqs else [[int(i == j) for j in range(db * da)] for i in range(db * da)]


def module_end_dim(m: F2Module) -> int:
    _check_dim(m, 8)
    return len(_intertwiners(m, m))


def hom_dim(a: F2Module, b: F2Module) -> int:
    return len(_intertwiners(a, b))


def _solve(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    """Coordinates of v in the given independent rows over F_2."""
    k = len(basis)
    d = len(v)
    aug = [[basis[r][c] for r in range(k)] + [v[c]] for c in range(d)]
    red, pivots = rref_mod(aug, 2)
    if k in pivots:
        raise DomainError("vector not in span")
    coords = [0] * k
    for row, pc in zip(red, pivots):
        coords[pc] = row[k]
    return coords


def subquotient(m: F2Module, lower: Subspace, upper: Subspace) -> F2Module:
    """The module upper/lower for invariant lower <= upper."""
    comp = []
    cur = list(lower)
    for v in upper:
        if len(span(cur + [v], m.dim)) > len(span(cur, m.dim)):
            comp.append(v)
            cur.append(v)
    basis = list(lower) + comp
    mats = []
    for a in m.matrices:
        cols = [_solve(basis, mat_vec(a, v, 2))[len(lower):] for v in comp]
        mats.append(tuple(tuple(cols[j][i] for j in range(len(comp))) for i in range(len(comp))))
    return F2Module(m.group, m.gens, tuple(mats))


@dataclass(frozen=True)
class SubmoduleLattice:
    subspaces: tuple[Subspace, ...]
    covers: tuple[tuple[int, int], ...]  # (i, j): subspaces[i] is maximal in subspaces[j]
    composition_series: tuple[Subspace, ...]
    factor_dims: tuple[int, ...]
    jordan_holder_unique: bool

    def __len__(self):
        return len(self.subspaces)


def submodule_lattice(m: F2Module) -> SubmoduleLattice:
    """All invariant subspaces (sums of cyclic submodules), with composition data."""
    _check_dim(m, 6)
    d = m.dim
    cyclic = {invariant_span(m, [v]) for v in product((0, 1), repeat=d) if any(v)}
    subs = {()} | cyclic
    frontier = set(cyclic)
    while frontier:
        nxt = set()
        for u in frontier:
            for c in cyclic:
                s = span(list(u) + list(c), d)
                if s not in subs:
                    subs.add(s)
                    nxt.add(s)
        frontier = nxt
    ordered = tuple(sorted(subs, key=lambda s: (len(s), s)))
    sets = [_vectors(s, d) for s in ordered]
    covers = []
    for j, sj in enumerate(sets):
        below = [i for i, si in enumerate(sets) if si < sj]
        for i in below:
            if not any(sets[i] < sets[k] < sj for k in below):
                covers.append((i, j))
    chains = _maximal_chains(len(ordered), covers)
    factor_lists = []
    for chain in chains:
        factor_lists.append([subquotient(m, ordered[a], ordered[b]) for a, b in zip(chain, chain[1:])])
    unique = all(_same_factors(factor_lists[0], fl) for fl in factor_lists[1:])
    first = chains[0]
    return SubmoduleLattice(
        ordered,
        tuple(covers),
        tuple(ordered[i] for i in first),
        tuple(f.dim for f in factor_lists[0]),
        unique,
    )


def _vectors(s: Subspace, d: int) -> frozenset:
    out = set()
    for coeffs in product((0, 1), repeat=len(s)):
        out.add(tuple(sum(c * row[i] for c, row in zip(coeffs, s)) % 2 for i in range(d)))
    return frozenset(out)


def _maximal_chains(count: int, covers, cap: int = 10_000) -> list[list[int]]:
    up: dict[int, list[int]] = {}
    for i, j in covers:
        up.setdefault(i, []).append(j)
    top = count - 1
    out = []
    stack = [[0]]
    while stack:
        chain = stack.pop()
        if chain[-1] == top:
            out.append(chain)
            if len(out) > cap:
                raise ResourceError("too many composition series")
            continue
        for j in up.get(chain[-1], []):
            stack.append(chain + [j])
    return out


def _same_factors(a: list[F2Module], b: list[F2Module]) -> bool:
    if len(a) != len(b):
        return False
    remaining = list(b)
    for s in a:
        match = next((k for k, t in enumerate(remaining) if s.dim == t.dim and hom_dim(s, t) > 0), None)
        if match is None:
            return False
        remaining.pop(match)
    return True


# -- unipotent actions over Z/n ---------------------------------------------

def unipotent_exponent_check(matrices: Sequence[Sequence[Sequence[int]]], n: int, flag_dim: int) -> bool:
    """sigma^n = 1 for every element of the group generated by ``matrices``.

    M = (Z/n)^d with submodule spanned by the first ``flag_dim`` basis
    vectors; the action must be trivial on it and on the quotient, which
    forces (sigma - 1)^2 = 0.  That identity is checked independently.
    """
    if n < 2:
        raise DomainError("n must be at least 2")
    mats = [_freeze(m, n) for m in matrices]
    if not mats:
        return True
    d = len(mats[0])
    if not 0 <= flag_dim <= d:
        raise DomainError("flag dimension out of range")
    ident = mat_identity(d)
    for m in mats:
        for i in range(d):
            for j in range(d):
                delta = (m[i][j] - ident[i][j]) % n
                # column j: fixed for j < k, moved into the sub for j >= k
                if delta and (j < flag_dim or i >= flag_dim):
                    raise PreconditionError("action is not trivial on the flagged submodule and its quotient")
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for m in mats:
                b = mat_mul(a, m, n)
                if b not in elements:
                    elements.add(b)
                    nxt.append(b)
                    if len(elements) > 100_000:
                        raise ResourceError("acting group too large")
        frontier = nxt
    for s in elements:
        nil = tuple(tuple((s[i][j] - ident[i][j]) % n for j in range(d)) for i in range(d))
        if any(any(r) for r in mat_mul(nil, nil, n)):
            return False
        power = ident
        for _ in range(n):
            power = mat_mul(power, s, n)
        if power != ident:
            return False
    return True


@dataclass(frozen=True)
class UnitriangularScan:
    n: int
    admissible: int  # (matrix, flag) pairs meeting the precondition
    rejected: int  # matrices with no coordinate flag
    failures: tuple[Mat, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def unitriangular_scan(n: int, dims: Sequence[int] = (2, 3)) -> UnitriangularScan:
    """Run unipotent_exponent_check on every upper unitriangular matrix over Z/n.

    Each matrix is tried against every coordinate flag 1..d-1; matrices that
    no such flag admits are counted as rejected rather than checked.
    """
    admissible = rejected = 0
    failures = []
    for d in dims:
        slots = [(i, j) for i in range(d) for j in range(i + 1, d)]
        for values in product(range(n), repeat=len(slots)):
            m = [list(r) for r in mat_identity(d)]
            for (i, j), v in zip(slots, values):
                m[i][j] = v
            hits = 0
            for k in range(1, d):
                try:
                    ok = unipotent_exponent_check([m], n, k)
                except PreconditionError:
                    continue
                hits += 1
                if not ok:
                    failures.append(_freeze(m, n))
            admissible += hits
            rejected += hits == 0
    return UnitriangularScan(n, admissible, rejected, tuple(failures))
