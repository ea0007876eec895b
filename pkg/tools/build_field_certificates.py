"""Build the shipped field certificates under src/verify19/data/fields/.

Each field is a compositum A(a) B(b) with primitive element theta = a + b.
Elements are modelled in the tensor basis a^i b^j; an order is described by
generators there, closed under multiplication, and finally rewritten in
the power basis of theta.  Units are located by T2 enumeration and checked
exactly before being written.

Run:  python tools/build_field_certificates.py
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from itertools import product
from math import lcm
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from verify19.arith.linalg import hnf, inverse, rank_q, vecmat  # noqa: E402
from verify19.arith.poly import Polynomial  # noqa: E402
from verify19.numfield.certificate import UnitCertificate  # noqa: E402
from verify19.numfield.embeddings import fincke_pohst, lll_reduce, t2_gram, embed  # noqa: E402
from verify19.numfield.field import NumberField  # noqa: E402
from verify19.numfield.roots import all_roots  # noqa: E402

OUT = ROOT / "src" / "verify19" / "data" / "fields"


class Tensor:
    """Q[a]/(fa) (x) Q[b]/(fb); vectors indexed by (i, j) -> a^i b^j."""

    def __init__(self, fa: Polynomial, fb: Polynomial):
        self.fa, self.fb = fa, fb
        self.da, self.db = fa.degree, fb.degree
        self.n = self.da * self.db

    def idx(self, i, j):
        return i * self.db + j

    def mul(self, u, v):
        out = [Fraction(0)] * self.n
        for (i, j), (k, l) in product(product(range(self.da), range(self.db)), repeat=2):
            c = u[self.idx(i, j)] * v[self.idx(k, l)]
            if not c:
                continue
            pa = Polynomial([0] * (i + k) + [1]) % self.fa
            pb = Polynomial([0] * (j + l) + [1]) % self.fb
            for s in range(self.da):
                for t in range(self.db):
                    if pa[s] and pb[t]:
                        out[self.idx(s, t)] += c * pa[s] * pb[t]
        return out

    def a(self):
        v = [Fraction(0)] * self.n
        v[self.idx(1, 0)] = Fraction(1)
        return v

    def b(self):
        v = [Fraction(0)] * self.n
        v[self.idx(0, 1)] = Fraction(1)
        return v

    def one(self):
        v = [Fraction(0)] * self.n
        v[0] = Fraction(1)
        return v

    def poly_in(self, g: Polynomial, x):
        acc = [Fraction(0)] * self.n
        for c in reversed(g.coeffs):
            acc = self.mul(acc, x)
            acc[0] += c
        return acc

    def theta_powers(self):
        theta = [x + y for x, y in zip(self.a(), self.b())]
        rows, cur = [], self.one()
        for _ in range(self.n):
            rows.append(cur)
            cur = self.mul(cur, theta)
        return rows


def _lattice(t: Tensor, rows):
    """Canonical HNF basis (rational rows) of the Z-span of rows."""
    d = lcm(*(x.denominator for r in rows for x in r))
    return [[Fraction(x, d) for x in r] for r in hnf([[int(x * d) for x in r] for r in rows], t.n)]


def ring_closure(t: Tensor, gens, max_rounds: int = 10):
    """Z-basis (rational rows, tensor coordinates) of the ring generated by gens."""
    cur = _lattice(t, gens)
    for _ in range(max_rounds):
        new = _lattice(t, cur + [t.mul(u, v) for u in cur for v in cur])
        if new == cur:
            return cur
        cur = new
    raise RuntimeError("generators are not integral: closure does not stabilize")


def to_theta_basis(t: Tensor, rows):
    powers = t.theta_powers()
    pinv = inverse(powers)
    return [vecmat(r, pinv) for r in rows]


def theta_minpoly(t: Tensor) -> Polynomial:
    powers = t.theta_powers()
    theta = [x + y for x, y in zip(t.a(), t.b())]
    top = t.mul(powers[-1], theta)
    coeffs = vecmat(top, inverse(powers))
    return Polynomial([-c for c in coeffs] + [1])


def find_units(nf: NumberField, rank: int, bound: float, limit: int = 400000):
    """Small units of norm +-1 found by T2 enumeration of O."""
    n = nf.degree
    rows = lll_reduce([[int(i == j) for j in range(n)] for i in range(n)], lambda b: t2_gram(nf, b))
    gram = t2_gram(nf, rows)
    found = []
    for vec in fincke_pohst(gram, bound, limit=limit):
        coords = [sum(v * r[j] for v, r in zip(vec, rows)) for j in range(n)]
        x = nf.element(coords)
        if abs(x.norm()) == 1:
            found.append(x)
    return found


def log_vector(x, r1, r2):
    e = embed(x)
    logs = [np.log(abs(e[i])) for i in range(r1)] + [2 * np.log(abs(e[r1 + k])) for k in range(r2)]
    return np.array(logs[:-1]) if len(logs) > 1 else np.array([])


def fundamental_system(nf: NumberField, units):
    """A basis of the lattice generated by the log vectors of ``units``."""
    r1, r2 = nf.signature
    rank = r1 + r2 - 1
    vecs = []
    for u in units:
        lv = log_vector(u, r1, r2)
        if np.linalg.norm(lv) > 1e-6:
            vecs.append((lv, u))
    vecs.sort(key=lambda t: np.linalg.norm(t[0]))
    basis = []
    for lv, u in vecs:
        if len(basis) < rank:
            m = np.array([b[0] for b in basis] + [lv])
            if np.linalg.matrix_rank(m, tol=1e-6) == len(basis) + 1:
                basis.append((lv, u))
    # replace the basis while some unit has fractional coordinates in it
    changed = True
    while changed:
        changed = False
        m = np.array([b[0] for b in basis])
        for lv, u in vecs:
            c = np.linalg.solve(m.T, lv)
            frac = np.abs(c - np.round(c))
            if np.max(frac) > 1e-6:
                # u generates a finer lattice: swap it for a basis element it improves
                reg = abs(np.linalg.det(m))
                for k in range(rank):
                    trial = [b for b in basis]
                    trial[k] = (lv, u)
                    mt = np.array([b[0] for b in trial])
                    d = abs(np.linalg.det(mt))
                    if 1e-6 < d < reg - 1e-6:
                        basis = trial
                        changed = True
                        break
                if changed:
                    break
    return [u for _, u in basis], abs(np.linalg.det(np.array([b[0] for b in basis]))) if basis else 1.0


def write(name: str, nf: NumberField):
    OUT.mkdir(parents=True, exist_ok=True)
    data = nf.to_json()
    data["name"] = name
    (OUT / f"{name}.json").write_text(json.dumps(data, indent=2) + "\n")
    print(f"wrote {name}: poly {nf.poly}, disc {nf.field_disc}, index {nf.basis_index}")


def build_rational():
    nf = NumberField("Q", Polynomial([0, 1]), [[1]], 1, (1, 0), units=[], torsion=[-1], torsion_order=2,
                     source="trivial")
    write("Q", nf)


def build_gaussian():
    nf = NumberField("Q_i", Polynomial([1, 0, 1]), [[1, 0], [0, 1]], -4, (0, 1), units=[], torsion=[0, 1],
                     torsion_order=4, source="power basis of x^2+1")
    write("Q_i", nf)


def build_q_sqrt_m19():
    nf = NumberField("Q_sqrt_m19", Polynomial([19, 0, 1]), [[1, 0], ["1/2", "1/2"]], -19, (0, 1), units=[],
                     torsion=[-1, 0], torsion_order=2, source="basis {1, (1+sqrt(-19))/2}")
    write("Q_sqrt_m19", nf)


def build_quartic():
    # a = i, b = omega = (1 + sqrt(-19))/2 with omega^2 - omega + 5 = 0
    t = Tensor(Polynomial([1, 0, 1]), Polynomial([5, -1, 1]))
    gens = [t.one(), t.a(), t.b(), t.mul(t.a(), t.b())]
    ring = ring_closure(t, gens)
    basis = to_theta_basis(t, ring)
    poly = theta_minpoly(t)
    provisional = NumberField("Q_i_sqrt_m19", poly, basis, 5776, (0, 2))
    i_elt = provisional.from_power(vecmat(t.a(), inverse(t.theta_powers())))
    eps_poly = Polynomial([1, -26, 338, 26, 1])
    eps = all_roots(provisional, eps_poly)
    assert len(eps) == 4, eps
    eps = sorted(eps, key=lambda y: [abs(c) for c in y.coords])[0]
    nf = NumberField("Q_i_sqrt_m19", poly, basis, 5776, (0, 2), units=[list(eps.coords)],
                     torsion=list(i_elt.coords), torsion_order=4,
                     source="compositum of Q(i) and Q(sqrt(-19)); basis {1, i, omega, i*omega}")
    assert UnitCertificate.from_field(nf).verify().passed
    write("Q_i_sqrt_m19", nf)


def build_sextic():
    # a = alpha, root of x^3 - 2x - 2;  b = omega
    fa = Polynomial([-2, -2, 0, 1])
    t = Tensor(fa, Polynomial([5, -1, 1]))
    sqrt_m19 = [2 * x for x in t.b()]
    sqrt_m19[0] -= 1
    # x^3 - 2x - 2 = (x - 8)^2 (x - 3) mod 19
    r, s = 8, 3
    num = t.poly_in(Polynomial([-r, 1]) * Polynomial([-s, 1]), t.a())
    inv_sqrt = [x * Fraction(-1, 19) for x in sqrt_m19]  # 1/sqrt(-19) = -sqrt(-19)/19
    beta = t.mul(num, inv_sqrt)
    gens = [t.one(), t.a(), t.b(), beta]
    gens += [t.mul(t.a(), t.a()), t.mul(t.a(), t.b()), t.mul(t.mul(t.a(), t.a()), t.b())]
    ring = ring_closure(t, gens)
    basis = to_theta_basis(t, ring)
    poly = theta_minpoly(t)
    disc = -(2**4) * 19**3
    provisional = NumberField("F", poly, basis, disc, (0, 3))
    rep = provisional.verification
    assert rep.passed, rep.summary()
    units = find_units(provisional, 2, bound=40.0)
    fund, reg = fundamental_system(provisional, units)
    print(f"F: {len(units)} small units, regulator of chosen system {reg:.6f}")
    nf = NumberField("F", poly, basis, disc, (0, 3), units=[list(u.coords) for u in fund],
                     torsion=list((-provisional.one).coords), torsion_order=2,
                     source="Z[omega, alpha] plus (alpha-8)(alpha-3)/sqrt(-19), closed under products")
    assert UnitCertificate.from_field(nf).verify().passed
    write("F", nf)


if __name__ == "__main__":
    build_rational()
    build_gaussian()
    build_q_sqrt_m19()
    build_quartic()
    build_sextic()
