"""The ten acceptance criteria, each timed and reported on one line."""

import random
import time
from fractions import Fraction

import pytest

from verify19.arith.galois import cubic_galois_group
from verify19.arith.integers import primes_up_to, squarefree_class
from verify19.arith.poly import Polynomial
from verify19.data import data_path
from verify19.hopf import (HopfRing, MPoly, annihilation_order, check_coassociativity, check_commutativity,
                           check_hopf_map, check_identity, default_catalog, ext_mu_dimension, perturb_law,
                           point_field_class, rewrite_stepwise)
from verify19.numfield.certificate import UnitCertificate
from verify19.numfield.classgroup import verify_class_number_one
from verify19.numfield.field import load_field
from verify19.numfield.ideals import Ideal, factor_rational_prime
from verify19.numfield.units import ray_class_group, unit_image_order, unit_quotient_structure
from verify19.ramification import (RamificationFiltration, degree_bound, herbrand_phi, herbrand_psi, load_table,
                                   root_disc_bound, upper_breaks)
from verify19.report import Provenance, Status, render_json
from verify19.suite import run_suite
from verify19.torsion.curve import X0_19, two_division_cubic, verify_two_torsion_field
from verify19.torsion.groups import lemma_scan_order_le_11, three_group_abelianization_scan
from verify19.torsion.modules import (module_end_dim, module_is_irreducible, standard_s3_module, submodule_lattice,
                                      unitriangular_scan)

FIELDS = ("Q", "Q_i", "Q_sqrt_m19", "Q_i_sqrt_m19", "F")


class Criterion:
    """Collects named sub-checks, times the body, prints one PASS/FAIL line."""

    def __init__(self, number, title, limit_s, capsys):
        self.number, self.title, self.limit, self.capsys = number, title, limit_s, capsys
        self.failed = []

    def expect(self, label, ok):
        if not ok:
            self.failed.append(label)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc_type is not None:
            self.failed.append(f"raised {exc_type.__name__}: {exc}")
        if elapsed >= self.limit:
            self.failed.append(f"took {elapsed:.3f}s, limit {self.limit}s")
        verdict = "FAIL" if self.failed else "PASS"
        detail = f" [{'; '.join(self.failed)}]" if self.failed else ""
        with self.capsys.disabled():
            print(f"\nACCEPTANCE {self.number:02d} {verdict}: {self.title} ({elapsed:.3f}s < {self.limit}s){detail}")
        assert not self.failed, self.failed
        return False


def test_criterion_01_bounds(capsys):
    table = load_table(data_path("tables", "totally_imaginary.csv"))
    with Criterion(1, "root-discriminant enclosure and degree bound 137", 0.001, capsys) as c:
        enc = root_disc_bound(19, 2)
        c.expect("width <= 1e-6", enc.width <= Fraction(1, 10**6))
        c.expect("encloses 4 sqrt 19", enc.lo**2 <= 304 <= enc.hi**2)
        bound = degree_bound(enc.hi, table)
        c.expect(f"degree_bound == 137 (got {bound})", bound == 137)


def test_criterion_02_quartic_cft(capsys):
    with Criterion(2, "quartic field Q(i, sqrt -19): factorization, norms, (O/2)*, unit image, Cl_2", 30, capsys) as c:
        k = load_field(data_path("fields", "Q_i_sqrt_m19.json"))
        primes = factor_rational_prime(k, 2)
        c.expect("2O = P^2 with f = 2", [(q.e, q.f) for q in primes] == [(2, 2)])
        i, eps = k.torsion_element(), k.unit_elements()[0]
        c.expect("N(i - eps) = 340", (i - eps).norm() == 340)
        c.expect("N(i - 1) = 4", (i - k.one).norm() == 4)
        c.expect("N(eps - 1) = 340", (eps - k.one).norm() == 340)
        two = Ideal.principal(k, k.scalar(2))
        group = unit_quotient_structure(k, two)
        c.expect("(O/2O)* = [2, 6]", group.structure.invariant_factors == (2, 6))
        units = UnitCertificate.from_field(k)
        c.expect("unit certificate", units.verify().passed)
        c.expect("unit image order 4", unit_image_order(k, units, two, group) == 4)
        h1 = verify_class_number_one(k, radius=12)
        c.expect("class number one", h1.passed)
        c.expect("generators within radius 12", all(p["max_coordinate"] <= 12 for p in h1.data["primes"]))
        ray = ray_class_group(k, units, two, class_number_report=h1)
        c.expect("ray class group [3]", ray.invariant_factors == (3,))


def test_criterion_03_sextic_cft(capsys):
    with Criterion(3, "sextic field F: factorization, class number, ray class group, unit image", 60, capsys) as c:
        f = load_field(data_path("fields", "F.json"))
        primes = factor_rational_prime(f, 2)
        c.expect("(2) = P^3 with f = 2", [(q.e, q.f) for q in primes] == [(3, 2)])
        c.expect("P principal", Ideal.principal(f, f.scalar(2)) == primes[0].ideal ** 3)
        h1 = verify_class_number_one(f)
        c.expect("class number one", h1.passed)
        units = UnitCertificate.from_field(f)
        two = Ideal.principal(f, f.scalar(2))
        c.expect("ray class group trivial", ray_class_group(f, units, two, class_number_report=h1).is_trivial())
        c.expect("unit image order 48", unit_image_order(f, units, two) == 48)


def test_criterion_04_ext_predicate(capsys):
    with Criterion(4, "Ext predicate examples and the p = +-1 mod 8 equivalence", 0.001, capsys) as c:
        c.expect("(19, 2) -> 0", ext_mu_dimension(19, 2) == 0)
        c.expect("(7, 2) -> 1", ext_mu_dimension(7, 2) == 1)
        c.expect("(23, 2) -> 1", ext_mu_dimension(23, 2) == 1)
        bad = [p for p in primes_up_to(199) if p >= 5 and (ext_mu_dimension(p, 2) == 1) != (p % 8 in (1, 7))]
        c.expect(f"mod 8 equivalence (violations {bad})", not bad)


def test_criterion_05_hopf_catalog(capsys):
    catalog = default_catalog()
    with Criterion(5, "Hopf catalog axioms, orders, point fields and negative controls", 5, capsys) as c:
        expected_orders = {"z2_mu2": 2, "z2_z2": 2, "z4": 4}
        for key, fam in sorted(catalog.items()):
            for n in range(1, 9):
                pres = fam.presentation(n)
                c.expect(f"{key} n={n} identity", check_identity(pres))
                c.expect(f"{key} n={n} commutativity", check_commutativity(pres))
                c.expect(f"{key} n={n} coassociativity", check_coassociativity(pres))
                c.expect(f"{key} n={n} order", annihilation_order(pres) == expected_orders[key])
                target = 8 * n + 1 if key == "z2_mu2" else 4 * n + 1
                c.expect(f"{key} n={n} point field", point_field_class(pres) == squarefree_class(target))
        base = catalog["z2_mu2"].presentation(2)
        c.expect("identity control (+yz) fails", not check_identity(perturb_law(base, 0, "y*z")))
        c.expect("commutativity control (+xz) fails", not check_commutativity(perturb_law(base, 0, "x*z")))
        swapped = catalog["z2_mu2"].variant(law={"x": "x + w - 2*x*w + n*y*z*(1-2*x)*(1-2*w)"})
        c.expect("coassociativity control (coefficient n) fails",
                 not any(check_coassociativity(swapped.presentation(n)) for n in range(1, 9)))
        wrong = catalog["z2_mu2"].sequence_maps(2, quotient_images={"t": "x"})[1]
        c.expect("sequence control (quotient -> x) fails", not check_hopf_map(wrong))


def test_criterion_06_curve(capsys):
    with Criterion(6, "X0(19) 2-division cubic and its splitting field F", 1, capsys) as c:
        f = load_field(data_path("fields", "F.json"))
        c.expect("cubic 4x^3+4x^2-36x-59", two_division_cubic(X0_19) == Polynomial([-59, -36, 4, 4]))
        rep = verify_two_torsion_field(X0_19, f)
        c.expect("splitting field is F", rep.passed)
        c.expect("disc class -19", rep.data.get("disc_class") == -19)
        c.expect("Gal(x^3-2x-2) = S3", cubic_galois_group(Polynomial([-2, -2, 0, 1])).name == "S3")


def test_criterion_07_modules(capsys):
    with Criterion(7, "standard F2[S3] module: irreducible, End = F2, lattice {0, M}", 1, capsys) as c:
        m = standard_s3_module()
        c.expect("irreducible", module_is_irreducible(m))
        c.expect("End dim 1", module_end_dim(m) == 1)
        lattice = submodule_lattice(m)
        c.expect("lattice {0, M}", [len(s) for s in lattice.subspaces] == [0, 2])


def test_criterion_08_group_scans(capsys):
    with Criterion(8, "order <= 11 scan, 3-group abelianization scan, unitriangular exponent scan", 2, capsys) as c:
        c.expect("order <= 11 scan", lemma_scan_order_le_11().passed)
        scan27 = three_group_abelianization_scan()
        c.expect("3-group scan", scan27.passed)
        witnesses = [r["group"] for r in scan27.data["groups"] if r["abelianization"] == [3]]
        c.expect("C3 unique witness", witnesses == ["C3"])
        for n in (2, 4):
            scan = unitriangular_scan(n)
            c.expect(f"unitriangular mod {n}", scan.passed and scan.admissible > 0)


def _random_filtration(rng):
    orders = [1]
    for _ in range(rng.randint(0, 7)):
        orders.append(orders[-1] * rng.choice([1, 1, 2, 3, 5]))
    return RamificationFiltration(tuple(reversed(orders)))


def _random_mpoly(rng, denominators):
    terms = {}
    for _ in range(rng.randint(1, 6)):
        while True:
            e = tuple(rng.randint(0, 4) for _ in range(4))
            if sum(e) <= 4:
                break
        terms[e] = Fraction(rng.randint(-9, 9), rng.choice(denominators))
    return MPoly(4, terms)


def test_criterion_09_property_suites(capsys):
    rng = random.Random(20261016)
    with Criterion(9, "norm multiplicativity, phi round trip, confluence, report determinism", 30, capsys) as c:
        for name in FIELDS:
            k = load_field(data_path("fields", f"{name}.json"))
            ok = True
            for _ in range(100):
                x = k.element([rng.randint(-6, 6) for _ in range(k.degree)])
                y = k.element([rng.randint(-6, 6) for _ in range(k.degree)])
                ok &= (x * y).norm() == x.norm() * y.norm()
            c.expect(f"norm multiplicative on {name}", ok)
        ok = True
        for _ in range(50):
            filt = _random_filtration(rng)
            for _ in range(5):
                u = Fraction(rng.randint(-30, 360), 30)
                ok &= herbrand_psi(filt, herbrand_phi(filt, u)) == u
            ok &= [herbrand_psi(filt, v) for v, _ in upper_breaks(filt)] == filt.lower_breaks()
        c.expect("phi round trip", ok)
        catalog = default_catalog()
        ok = True
        for k in range(200):
            fam = catalog[sorted(catalog)[k % 3]]
            pres = fam.presentation(1 + k % 8)
            poly = _random_mpoly(rng, [1] if pres.inverted % 3 else [1, 3, 9])
            ref = HopfRing(pres, 2).normal_form(poly)
            ok &= rewrite_stepwise(poly, pres, 2, "low") == ref == rewrite_stepwise(poly, pres, 2, k)
        c.expect("normal-form confluence", ok)
        c.expect("report determinism", render_json(run_suite(["ext", "groups", "hopf"])) ==
                 render_json(run_suite(["ext", "groups", "hopf"])))


def test_criterion_10_honesty(capsys):
    with Criterion(10, "assumed entries are exactly the imported facts; every pass is computed", 120, capsys) as c:
        rep = run_suite(["all"])
        assumed = sorted(x.id for x in rep.checks if x.status is Status.ASSUMED)
        c.expect("four assumed entries",
                 assumed == ["assumed.biconnected", "assumed.faltings", "assumed.mayer_vietoris", "assumed.raynaud"])
        for x in rep.checks:
            if x.status is Status.PASS:
                c.expect(f"{x.id} has a computed value", x.computed not in ("", "not computed"))
                c.expect(f"{x.id} is not assumed", x.provenance is not Provenance.ASSUMED)
            if x.provenance is Provenance.ASSUMED:
                c.expect(f"{x.id} assumed status", x.status is Status.ASSUMED)
