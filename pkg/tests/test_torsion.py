from fractions import Fraction
from itertools import product

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from verify19.arith.galois import cubic_galois_group
from verify19.arith.poly import Polynomial
from verify19.errors import DomainError, PreconditionError, ResourceError
from verify19.torsion.curve import (X0_19, EllipticCurveQ, four_division_cofactor, two_division_cubic,
                                    verify_two_torsion_field)
from verify19.torsion.groups import (
    CatalogIntegrityError,
    SmallGroup,
    catalog_order_le_11,
    catalog_three_groups,
    cyclic,
    dihedral,
    direct_product,
    element_by_label,
    heisenberg,
    lemma_scan_order_le_11,
    pgroup_generation_check,
    quaternion,
    symmetric3,
    three_group_abelianization_scan,
)
from verify19.torsion.modules import (
    F2Module,
    direct_sum,
    hom_dim,
    mat_identity,
    mat_mul,
    module_end_dim,
    module_is_irreducible,
    standard_s3_module,
    submodule_lattice,
    trivial_module,
    unipotent_exponent_check,
    unitriangular_scan,
)

# -- curve ----------------------------------------------------------------------

def test_two_division_cubic_examples():
    assert two_division_cubic(X0_19) == Polynomial([-59, -36, 4, 4])
    assert two_division_cubic(EllipticCurveQ(0, 0, 0, 0, 1)) == Polynomial([4, 0, 0, 4])
    assert two_division_cubic(EllipticCurveQ(0, 0, 0, -1, 0)) == Polynomial([0, -4, 0, 4])


def test_x0_19_invariants():
    assert (X0_19.b2, X0_19.b4, X0_19.b6) == (4, -18, -59)
    assert X0_19.discriminant == -(19**3)


def test_singular_curve_rejected():
    with pytest.raises(DomainError):
        EllipticCurveQ(0, 0, 0, 0, 0)


@pytest.mark.parametrize("curve, x0", [
    (EllipticCurveQ(0, 0, 0, -1, 0), 0), (EllipticCurveQ(0, 0, 0, -1, 0), 1), (EllipticCurveQ(0, 0, 0, -1, 0), -1),
    (EllipticCurveQ(0, 0, 0, 0, 1), -1), (EllipticCurveQ(1, 0, 0, 0, -9), 2),
])
def test_cubic_vanishes_at_rational_two_torsion(curve, x0):
    y0 = -(curve.a1 * x0 + curve.a3) / 2  # 2-torsion: the tangent is vertical
    lhs = y0**2 + curve.a1 * x0 * y0 + curve.a3 * y0
    rhs = x0**3 + curve.a2 * x0**2 + curve.a4 * x0 + curve.a6
    assert lhs == rhs
    assert two_division_cubic(curve)(x0) == 0


coeff = st.integers(-6, 6)


@settings(max_examples=40, deadline=None)
@given(coeff, coeff, coeff, coeff, coeff)
def test_cubic_is_discriminant_in_y(a1, a2, a3, a4, a6):
    """Oracle: 4x^3 + b2 x^2 + 2 b4 x + b6 is disc_y of the Weierstrass equation."""
    x, y = sympy.symbols("x y")
    eq = y**2 + a1 * x * y + a3 * y - (x**3 + a2 * x**2 + a4 * x + a6)
    disc = sympy.Poly(sympy.discriminant(eq, y), x)
    try:
        curve = EllipticCurveQ(a1, a2, a3, a4, a6)
    except DomainError:
        return
    assert [int(c) for c in reversed(disc.all_coeffs())] == [int(c) for c in two_division_cubic(curve).coeffs]


def test_four_division_cofactor_doubles_onto_two_torsion():
    """x(2P) for every root of psi_4/psi_2 is a root of the 2-division cubic."""
    e = X0_19
    cof = four_division_cofactor(e)
    assert cof.degree == 6
    cubic = two_division_cubic(e)
    b2, b4, b6, b8 = (float(v) for v in (e.b2, e.b4, e.b6, e.b8))
    for x in np.roots([float(c) for c in reversed(cof.coeffs)]):
        x2 = (x**4 - b4 * x**2 - 2 * b6 * x - b8) / (4 * x**3 + b2 * x**2 + 2 * b4 * x + b6)
        val = np.polyval([float(c) for c in reversed(cubic.coeffs)], x2)
        assert abs(val) < 1e-6 * max(1.0, abs(x2) ** 3)


def test_cubic_galois_group_examples():
    assert cubic_galois_group(Polynomial([-2, -2, 0, 1])).name == "S3"
    assert cubic_galois_group(two_division_cubic(X0_19)).name == "S3"


def test_two_torsion_field_is_sextic(sextic):
    rep = verify_two_torsion_field(X0_19, sextic)
    assert rep.passed, rep.summary()
    assert rep.data["disc_class"] == -19


def test_two_torsion_field_fails_on_split_curve(sextic):
    rep = verify_two_torsion_field(EllipticCurveQ(0, 0, 0, -1, 0), sextic)
    assert not rep.passed
    assert any("irreducible" in f for f in rep.failures())


def test_two_torsion_field_fails_on_quartic(quartic):
    rep = verify_two_torsion_field(X0_19, quartic)
    assert not rep.passed
    assert any("cubic has a root" in f for f in rep.failures())


@pytest.mark.parametrize("name", ["Q", "Q_i", "Q_sqrt_m19", "Q_i_sqrt_m19"])
def test_two_torsion_field_rejects_every_other_shipped_field(fields, name):
    assert not verify_two_torsion_field(X0_19, fields[name]).passed


# -- groups -----------------------------------------------------------------------

@pytest.mark.parametrize("group", catalog_order_le_11() + catalog_three_groups(), ids=lambda g: g.name)
def test_catalog_integrity(group):
    group.check_integrity()


def test_non_associative_loop_rejected():
    table = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
    with pytest.raises(CatalogIntegrityError):
        SmallGroup("loop", table).check_integrity()
    with pytest.raises(CatalogIntegrityError):
        lemma_scan_order_le_11([SmallGroup("loop", table)])


def test_catalog_orders():
    orders = sorted(g.order for g in catalog_order_le_11())
    assert orders.count(8) == 5 and orders.count(4) == 2 and orders.count(9) == 2
    assert sorted(g.order for g in catalog_three_groups()) == [3, 9, 9, 27, 27, 27, 27, 27]


def test_lemma_scan_examples():
    rep = lemma_scan_order_le_11()
    assert rep.passed, rep.summary()
    rows = {r["group"]: r for r in rep.data["groups"]}
    assert rows["C2"]["kind"] == "excluded" and rows["C2"]["psi_order"] == 1
    assert rows["C2 x C2"]["kind"] == "non-cyclic 2-group"
    assert rows["S3"]["kind"] == "excluded" and rows["S3"]["psi_order"] == 3
    viable = sorted(r["group"] for r in rows.values() if r["viable"])
    assert viable == sorted(["C1", "C3", "C9", "C2 x C2", "C2 x C4", "C2 x C2 x C2", "D4", "Q8", "C3 x C3"])


def test_three_group_scan_examples():
    rep = three_group_abelianization_scan()
    assert rep.passed, rep.summary()
    rows = {r["group"]: r["abelianization"] for r in rep.data["groups"]}
    assert rows["C3"] == [3]
    assert rows["Heis(3)"] == [3, 3]
    assert rows["C9"] == [9]


@pytest.mark.parametrize("group", catalog_order_le_11() + catalog_three_groups(), ids=lambda g: g.name)
def test_abelianization_order_matches_derived_subgroup(group):
    from math import prod

    assert prod(group.abelianization()) * len(group.derived_subgroup) == group.order


def test_abelianization_invariant_factors():
    assert dihedral(4).abelianization() == (2, 2)
    assert quaternion().abelianization() == (2, 2)
    assert symmetric3().abelianization() == (2,)
    assert direct_product("C2 x C4", cyclic(2), cyclic(4)).abelianization() == (2, 4)
    assert cyclic(1).abelianization() == ()


def test_pgroup_generation_examples():
    d4, q8 = dihedral(4), quaternion()
    assert pgroup_generation_check(d4, [element_by_label(d4, (0, 1)), element_by_label(d4, (1, 1))])
    assert pgroup_generation_check(cyclic(4), [1])
    assert pgroup_generation_check(q8, [element_by_label(q8, (1, "i")), element_by_label(q8, (1, "j"))])


def test_pgroup_generation_exhaustive_small_pgroups():
    for g in [dihedral(4), quaternion(), heisenberg(3), cyclic(8)]:
        for a, b in product(g.elements, repeat=2):
            if len(g.closure({a, b} | set(g.derived_subgroup))) == g.order:
                assert pgroup_generation_check(g, [a, b])


def test_pgroup_generation_preconditions():
    with pytest.raises(PreconditionError):
        pgroup_generation_check(symmetric3(), [1, 2])
    d4 = dihedral(4)
    with pytest.raises(PreconditionError):
        pgroup_generation_check(d4, [element_by_label(d4, (0, 1))])


# -- F2 modules ---------------------------------------------------------------------

@pytest.fixture(scope="module")
def std():
    return standard_s3_module()


def _trivial(std, dim):
    return trivial_module(std.group, std.gens, dim)


def test_standard_module_is_irreducible(std):
    assert module_is_irreducible(std)
    assert module_end_dim(std) == 1
    lattice = submodule_lattice(std)
    assert len(lattice) == 2
    assert lattice.factor_dims == (2,)


def test_irreducibility_examples(std):
    assert module_is_irreducible(_trivial(std, 1))
    assert not module_is_irreducible(_trivial(std, 2))
    assert not module_is_irreducible(direct_sum(std, std))


def test_end_dim_examples(std):
    assert module_end_dim(_trivial(std, 2)) == 4
    assert module_end_dim(direct_sum(std, _trivial(std, 1))) == 2
    assert hom_dim(std, _trivial(std, 1)) == 0


def test_end_of_square_is_matrix_algebra(std):
    assert module_end_dim(direct_sum(std, std)) == 4 * module_end_dim(std)


def test_lattice_of_standard_square(std):
    lattice = submodule_lattice(direct_sum(std, std))
    assert len(lattice) == 5  # 0, three lines over End = F_2, and M
    assert sorted(len(s) for s in lattice.subspaces) == [0, 2, 2, 2, 4]
    assert lattice.factor_dims == (2, 2)
    assert lattice.jordan_holder_unique


def test_lattice_of_trivial_plane(std):
    lattice = submodule_lattice(_trivial(std, 2))
    assert len(lattice) == 5
    assert lattice.jordan_holder_unique


def test_lattice_matches_brute_force(std):
    """Every subspace of F_2^4 that is invariant appears in the lattice and nothing else does."""
    m = direct_sum(std, _trivial(std, 2))
    d = m.dim
    vectors = [v for v in product((0, 1), repeat=d)]
    invariant = set()
    for mask in range(1 << len(vectors)):
        s = {vectors[i] for i in range(len(vectors)) if mask >> i & 1}
        if (0,) * d not in s or any(tuple((a + b) % 2 for a, b in zip(u, v)) not in s for u in s for v in s):
            continue
        if all(tuple(sum(r[k] * v[k] for k in range(d)) % 2 for r in g) in s for g in m.matrices for v in s):
            invariant.add(frozenset(s))
    lattice = submodule_lattice(m)
    assert len(lattice) == len(invariant)


def test_module_validation(std):
    with pytest.raises(DomainError):
        F2Module(std.group, std.gens, (((1, 0), (0, 1)), ((1, 1), (0, 1)), ((1, 0), (0, 1))))
    with pytest.raises(DomainError):
        F2Module(std.group, std.gens, (((1, 1), (0, 1)), ((0, 1), (1, 0))))  # rot of order 2
    with pytest.raises(ResourceError):
        module_is_irreducible(_trivial(std, 9))


# -- unipotent actions ------------------------------------------------------------------

def test_unipotent_examples():
    assert all(unipotent_exponent_check([[[1, a], [0, 1]]], 2, 1) for a in range(2))
    assert all(unipotent_exponent_check([[[1, a], [0, 1]]], 4, 1) for a in range(4))
    assert unipotent_exponent_check([mat_identity(3)], 4, 2)
    assert unipotent_exponent_check([], 4, 0)


@pytest.mark.parametrize("n", [2, 4])
def test_unitriangular_scan_exhaustive(n):
    scan = unitriangular_scan(n)
    assert scan.passed
    assert scan.admissible > 0


@pytest.mark.parametrize("n", [2, 3, 4, 6, 8])
def test_groups_generated_by_admissible_matrices(n):
    gens = [[[1, 0, 1], [0, 1, n - 1], [0, 0, 1]], [[1, 0, 2 % n], [0, 1, 1], [0, 0, 1]]]
    assert unipotent_exponent_check(gens, n, 2)


def test_precondition_is_needed():
    """Without a flag, a 3x3 unitriangular matrix over Z/2 can have order 4."""
    m = ((1, 1, 0), (0, 1, 1), (0, 0, 1))
    assert mat_mul(m, m, 2) != mat_identity(3)
    for k in (1, 2):
        with pytest.raises(PreconditionError):
            unipotent_exponent_check([m], 2, k)


def test_unipotent_domain():
    with pytest.raises(DomainError):
        unipotent_exponent_check([[[1]]], 1, 0)
    with pytest.raises(DomainError):
        unipotent_exponent_check([[[1, 0], [0, 1]]], 2, 3)
