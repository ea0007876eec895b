from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from verify19.arith import finite_field as ff
from verify19.arith.galois import CubicGroup, cubic_galois_group
from verify19.arith.integers import factorint, root_enclosure, squarefree_class
from verify19.arith.linalg import det, hnf, smith_normal_form
from verify19.arith.poly import Polynomial, poly_discriminant, poly_gcd, resultant
from verify19.errors import DomainError, PreconditionError

X = Polynomial.x()

small = st.integers(-20, 20)
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def polys(max_degree=6):
    return st.lists(small, min_size=2, max_size=max_degree + 1).map(Polynomial).filter(lambda f: f.degree >= 1)


def sylvester_resultant(f, g):
    """Oracle: determinant of the Sylvester matrix via sympy."""
    m, n = f.degree, g.degree
    a = [f[m - i] for i in range(m + 1)]
    b = [g[n - i] for i in range(n + 1)]
    rows = [[0] * i + a + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + b + [0] * (m - 1 - i) for i in range(m)]
    return Fraction(str(sympy.Matrix(rows).det()))


@pytest.mark.parametrize("f, disc", [
    (X**2 + 1, -4),
    (X**3 - 2 * X - 2, -76),
    (X**2 - X, 1),
])
def test_discriminant_examples(f, disc):
    assert poly_discriminant(f) == disc


def test_discriminant_of_constant_rejected():
    with pytest.raises(DomainError):
        poly_discriminant(Polynomial([3]))


@given(polys(), polys())
@settings(max_examples=80, deadline=None)
def test_resultant_matches_sylvester(f, g):
    assert resultant(f, g) == sylvester_resultant(f, g)


@given(polys(), polys())
@settings(max_examples=80, deadline=None)
def test_resultant_vanishes_iff_common_factor(f, g):
    assert (resultant(f, g) == 0) == (poly_gcd(f, g).degree >= 1)


@given(st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_discriminant_from_root_differences(roots):
    f = Polynomial.from_roots(roots)
    r = roots
    expected = ((r[0] - r[1]) * (r[0] - r[2]) * (r[1] - r[2])) ** 2
    assert poly_discriminant(f) == expected


def _expand(fac):
    out = [fac.unit]
    for g, e in fac.factors:
        for _ in range(e):
            out = ff.mul(out, list(g), fac.prime)
    return ff.trim(out)


@pytest.mark.parametrize("f, p, expected", [
    (X**2 + 1, 2, [((1, 1), 2)]),
    (X**3 - 2 * X - 2, 2, [((0, 1), 3)]),
])
def test_factor_mod_p_examples(f, p, expected):
    assert list(ff.factor_mod_p(f, p).factors) == expected


def _brute_force_irreducible(g, p):
    """Oracle: no monic factor of degree 1..deg/2, by enumeration."""
    d = len(g) - 1
    for k in range(1, d // 2 + 1):
        for tail in product(range(p), repeat=k):
            h = list(tail) + [1]
            if not ff.mod(list(g), h, p):
                return False
    return True


def test_x3_minus_2x_minus_2_is_irreducible_mod_5():
    f = X**3 - 2 * X - 2
    fac = ff.factor_mod_p(f, 5)
    assert fac.degrees() == [3]
    assert all(ff.evaluate(ff.reduce_poly(f, 5), x, 5) for x in range(5))
    assert _brute_force_irreducible(ff.reduce_poly(f, 5), 5)


def test_factor_mod_p_rejects_vanishing_leading_coefficient():
    with pytest.raises(PreconditionError):
        ff.factor_mod_p(2 * X**2 + 1, 2)


@given(st.lists(st.integers(0, 100), min_size=2, max_size=8), st.sampled_from([2, 3, 5, 7, 19]))
@settings(max_examples=150, deadline=None)
def test_factorization_reproduces_input(coeffs, p):
    f = ff.trim([c % p for c in coeffs])
    if len(f) < 2:
        return
    fac = ff.factor_fp(f, p)
    assert _expand(fac) == f
    for g, _ in fac.factors:
        assert g[-1] == 1 and _brute_force_irreducible(g, p)


@pytest.mark.parametrize("f, group", [
    (X**3 - 2 * X - 2, CubicGroup.S3),
    (X**3 - 3 * X - 1, CubicGroup.C3),
    (X**3 - 2, CubicGroup.S3),
])
def test_cubic_galois_group(f, group):
    assert cubic_galois_group(f) == group


def test_cubic_galois_group_rejects_reducible():
    with pytest.raises(PreconditionError):
        cubic_galois_group(X**3 - X)


@pytest.mark.parametrize("q, d", [(-76, -19), (1, 1), (Fraction(8, 9), 2)])
def test_squarefree_class_examples(q, d):
    assert squarefree_class(q) == d


def test_squarefree_class_of_zero():
    with pytest.raises(DomainError):
        squarefree_class(0)


@given(rationals.filter(bool), rationals.filter(bool))
def test_squarefree_class_ignores_squares(q, r):
    assert squarefree_class(q * r * r) == squarefree_class(q)


@given(st.integers(2, 10**9))
def test_factorint_reconstructs(n):
    out = 1
    for p, e in factorint(n).items():
        assert sympy.isprime(p)
        out *= p**e
    assert out == n


@given(st.fractions(min_value=Fraction(1, 50), max_value=10**6, max_denominator=50), st.integers(2, 5))
def test_root_enclosure_brackets(q, k):
    lo, hi = root_enclosure(q, k, 10**6)
    assert lo**k <= q <= hi**k
    assert hi - lo <= Fraction(2, 10**6)


int_matrices = st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=5)


@given(int_matrices)
def test_hnf_is_idempotent_and_preserves_lattice(rows):
    h = hnf(rows, 3)
    assert hnf(h, 3) == h
    # same lattice: each original row is an integer combination of h rows, and vice versa
    assert hnf(list(h) + rows, 3) == h


@given(int_matrices)
def test_smith_form_divisibility_and_determinant(rows):
    diag, _ = smith_normal_form(rows, 3)
    nonzero = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    if len(rows) == 3 and det(rows) != 0:
        prod = 1
        for d in diag:
            prod *= d
        assert prod == abs(det(rows))
