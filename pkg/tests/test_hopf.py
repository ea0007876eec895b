from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from verify19.arith.integers import squarefree_class
from verify19.errors import DataFileError, DomainError, ResourceError
from verify19.hopf import (
    CoefficientDomainError,
    HopfRing,
    MPoly,
    annihilation_order,
    check_coassociativity,
    check_commutativity,
    check_hopf_map,
    check_identity,
    check_law_is_morphism,
    check_sequence_maps,
    default_catalog,
    evaluate_expression,
    ext_mu_dimension,
    law_report,
    load_catalog,
    normal_form,
    perturb_law,
    point_field_class,
    rewrite_stepwise,
)

CATALOG = default_catalog()
FAMILIES = sorted(CATALOG)
NS = range(1, 9)


def _var(nvars, i):
    return MPoly.var(nvars, i)


# -- normal forms -------------------------------------------------------------

def test_normal_form_examples():
    pres = CATALOG["z2_mu2"].presentation(3)
    x, y = _var(2, 0), _var(2, 1)
    assert normal_form(y * y, pres) == y * -2
    assert normal_form(x * x, pres) == x - y * 3
    assert normal_form(x * y, pres) == x * y


def test_normal_form_support_is_tensor_basis():
    pres = CATALOG["z4"].presentation(2)
    ring = HopfRing(pres, 2)
    poly = sum((ring.var(0, 0) + ring.var(1, 1) + 1) ** k for k in range(1, 7))
    reduced = ring.normal_form(poly)
    assert all(max(m) <= 1 for m in reduced.terms)
    assert len(reduced.terms) <= 16


def test_coefficient_domain_enforced():
    pres = CATALOG["z2_mu2"].presentation(1)  # Z[1/9]
    ring = HopfRing(pres, 1)
    assert ring.normal_form(ring.var(0, 0) / 3) is not None
    with pytest.raises(CoefficientDomainError):
        ring.normal_form(ring.var(0, 0) / 2)


def test_bad_law_coefficient_rejected_at_construction():
    fam = CATALOG["z2_z2"].variant(law={"y": "y + z - y*z/2"})
    with pytest.raises(CoefficientDomainError):
        fam.presentation(1)


@st.composite
def random_polys(draw):
    """Degree <= 4 polynomials in two coordinate blocks with small rational coefficients."""
    k = draw(st.integers(1, 6))
    terms = {}
    for _ in range(k):
        exps = draw(st.lists(st.integers(0, 4), min_size=4, max_size=4).filter(lambda e: sum(e) <= 4))
        terms[tuple(exps)] = Fraction(draw(st.integers(-9, 9)), draw(st.sampled_from([1, 3, 9])))
    return MPoly(4, terms)


@settings(max_examples=200, deadline=None)
@given(random_polys(), st.sampled_from(FAMILIES), st.integers(1, 8), st.integers(0, 10**6))
def test_normal_form_confluence(poly, key, n, seed):
    pres = CATALOG[key].presentation(n)
    poly = MPoly(4, {m: c for m, c in poly.terms.items() if c.denominator == 1 or pres.inverted % 3 == 0})
    reference = HopfRing(pres, 2).normal_form(poly)
    assert rewrite_stepwise(poly, pres, 2, "low") == reference
    assert rewrite_stepwise(poly, pres, 2, "high") == reference
    assert rewrite_stepwise(poly, pres, 2, seed) == reference


# -- group-law axioms ------------------------------------------------------------

@pytest.mark.parametrize("key", FAMILIES)
@pytest.mark.parametrize("n", NS)
def test_law_axioms(key, n):
    fam = CATALOG[key]
    rep = law_report(fam.presentation(n))
    assert rep.identity and rep.commutativity and rep.morphism and rep.coassociativity
    assert rep.annihilation_order == fam.expected_order
    assert rep.point_field_class == fam.expected_point_class(n)


def test_expected_annihilation_orders():
    assert [CATALOG[k].expected_order for k in ("z2_mu2", "z2_z2", "z4")] == [2, 2, 4]
    assert annihilation_order(CATALOG["z4"].presentation(1)) == 4


def test_point_field_examples():
    assert point_field_class(CATALOG["z2_mu2"].presentation(2)) == 17
    assert point_field_class(CATALOG["z4"].presentation(1)) == 5
    assert point_field_class(CATALOG["z2_z2"].presentation(6)) == 1


@pytest.mark.parametrize("n", NS)
def test_point_field_matches_formula(n):
    assert point_field_class(CATALOG["z2_mu2"].presentation(n)) == squarefree_class(8 * n + 1)
    for key in ("z2_z2", "z4"):
        assert point_field_class(CATALOG[key].presentation(n)) == squarefree_class(4 * n + 1)


def test_perturbation_by_yz_keeps_identity_but_breaks_the_law():
    """yz vanishes at (w, z) = (0, 0), so only the later axioms notice it."""
    for key in FAMILIES:
        bad = perturb_law(CATALOG[key].presentation(2), 0, "y*z")
        assert check_identity(bad)
        assert not check_law_is_morphism(bad)
        assert not check_coassociativity(bad)
        assert not law_report(bad).passed


def test_perturbation_by_xz_breaks_commutativity():
    for key in FAMILIES:
        bad = perturb_law(CATALOG[key].presentation(1), 0, "x*z")
        assert not check_commutativity(bad)


def test_identity_perturbation_by_x_is_detected():
    bad = perturb_law(CATALOG["z4"].presentation(1), 1, "x")
    assert not check_identity(bad)


def test_coefficient_perturbation_fails_coassociativity():
    fam = CATALOG["z2_mu2"].variant(law={"x": "x + w - 2*x*w + n*y*z*(1-2*x)*(1-2*w)"})
    for n in NS:
        assert not check_coassociativity(fam.presentation(n))


def test_broken_law_exceeds_annihilation_cap():
    fam = CATALOG["z2_z2"].variant(law={"y": "y + z"})
    with pytest.raises(ResourceError):
        annihilation_order(fam.presentation(1), cap=16)


# -- brute-force point oracle ------------------------------------------------------

def _mod_p(c: Fraction, p: int) -> int:
    return c.numerator * pow(c.denominator, -1, p) % p


def _eval(poly: MPoly, values, p):
    total = 0
    for m, c in poly.terms.items():
        t = _mod_p(c, p)
        for v, e in zip(values, m):
            t = t * pow(v, e, p) % p
        total = (total + t) % p
    return total


@pytest.mark.parametrize("key, n, p", [("z2_mu2", 2, 13), ("z2_z2", 2, 11), ("z4", 1, 11), ("z4", 5, 5)])
def test_points_over_splitting_field_form_the_expected_group(key, n, p):
    """Solve the relations in F_p and evaluate the law on the points directly."""
    pres = CATALOG[key].presentation(n)
    assert pres.inverted % p
    points = [(a, b) for a, b in product(range(p), repeat=2)
              if all((v * v - _eval(r, (a, b), p)) % p == 0 for v, r in zip((a, b), pres.rules))]
    assert len(points) == 4

    def add(u, v):
        return tuple(_eval(s, u + v, p) for s in pres.law)

    zero = (0, 0)
    assert zero in points
    for u in points:
        assert add(u, zero) == u
        for v in points:
            assert add(u, v) in points
            assert add(u, v) == add(v, u)
            for w in points:
                assert add(add(u, v), w) == add(u, add(v, w))
    doubles = {add(u, u) for u in points}
    expected_cyclic = CATALOG[key].expected_order == 4
    assert (doubles != {zero}) == expected_cyclic


# -- exact-sequence maps ---------------------------------------------------------

@pytest.mark.parametrize("key", FAMILIES)
@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_sequence_maps(key, n):
    assert check_sequence_maps(CATALOG[key], n)


@pytest.mark.parametrize("key", FAMILIES)
def test_quotient_map_to_wrong_coordinate_fails(key):
    maps = CATALOG[key].sequence_maps(2, quotient_images={"t": "x"})
    assert check_hopf_map(maps[0])
    assert not check_hopf_map(maps[1])


# -- Ext predicate -------------------------------------------------------------------

def test_ext_examples():
    assert ext_mu_dimension(19, 2) == 0
    assert ext_mu_dimension(7, 2) == 1
    assert ext_mu_dimension(23, 2) == 1


def test_ext_matches_residue_mod_8():
    primes = [p for p in range(5, 200) if all(p % q for q in range(2, int(p**0.5) + 1))]
    for p in primes:
        assert (ext_mu_dimension(p, 2) == 1) == (p % 8 in (1, 7))


def test_ext_domain():
    for args in ((3, 2), (2, 3), (7, 7), (9, 2), (7, 4)):
        with pytest.raises(DomainError):
            ext_mu_dimension(*args)


# -- catalog and parsing -----------------------------------------------------------

def test_catalog_keys():
    assert FAMILIES == ["z2_mu2", "z2_z2", "z4"]
    with pytest.raises(DomainError):
        CATALOG["z4"].presentation(0)


def test_load_catalog_errors(tmp_path):
    with pytest.raises(DataFileError):
        load_catalog(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(DataFileError):
        load_catalog(bad)
    bad.write_text('{"families": [{"key": "k"}]}')
    with pytest.raises(DataFileError):
        load_catalog(bad)


def test_expression_evaluator_rejects_code():
    assert evaluate_expression("2^3 + n", {"n": Fraction(1)}) == 9
    for text in ("__import__('os')", "n.real", "[1]", "1 if n else 2"):
        with pytest.raises(DomainError):
            evaluate_expression(text, {"n": Fraction(1)})
