import pytest

from equichern.cartan import CartanElement
from equichern.connection import (AlgebraConsistencyError, TensorWeilAlgebra,
                                  build,
                                  covariant_cartan_differential,
                                  equivariant_curvature, verify_cartan_image,
                                  verify_connection_horizontality,
                                  verify_equivariant_closedness,
                                  verify_structure_equation)
from equichern.lie import (LieAlgebraData, abelian, so3, su2, u1, u2, u2_rep)
from equichern.scalars import Scalar


def test_abelian_tables_collapse():
    U = build(u1(), u1(), truncation=8)
    assert U.d(U.mu(0, 0)) == -U.rho(0, 0)
    assert U.d(U.rho(0, 0)).is_zero()
    assert U.d(U.Theta(0)) == U.Omega(0)
    assert U.iota(0, U.Theta(0)) == U.mu(0, 0)


def test_moments_rotate_with_structure_constants():
    g = su2()
    U = build(g, u1(), truncation=8)
    for a in range(3):
        for b in range(3):
            want = U.zero()
            for c in range(3):
                f = g.structure(a, b, c)
                if not f.is_zero():
                    want = want + U.mu(c, 0) * f
            assert U.lie(a, U.mu(b, 0)) == want


def test_full_nonabelian_build_passes_consistency():
    U = build(su2(), su2(), truncation=8)
    assert all(c.ok for c in U.consistency_report())


def test_inconsistent_input_fails_loudly():
    # a non-antisymmetric table breaks the contraction anticommutators
    f = [[[Scalar.zero() for _ in range(2)] for _ in range(2)] for _ in range(2)]
    f[0][1][0] = Scalar.from_rational(1)  # missing the antisymmetric partner
    asym = LieAlgebraData("asym", 2, f)
    with pytest.raises(AlgebraConsistencyError):
        build(asym, u1(), truncation=6)


def test_equivariant_curvature_components():
    U = build(abelian(2), u1(), truncation=8)
    og = equivariant_curvature(U)
    want = CartanElement.from_graded(U.Omega(0), U)
    for a in range(2):
        want = want - CartanElement({(a,): U.mu(a, 0)}, U)
    assert og[0] == want


def test_equivariant_curvature_trivial_symmetry():
    g0 = LieAlgebraData("trivial", 0)
    U = build(g0, u1(), truncation=8)
    og = equivariant_curvature(U)
    assert og[0] == CartanElement.from_graded(U.Omega(0), U)
    T = TensorWeilAlgebra(g0, u1(), truncation=8)
    assert T.universal_connection()[0] == T.conn.Theta(0)


def test_evaluation_gives_curvature_minus_gauge_shape():
    # chi -> test scalars turns Omega - chi mu into the F - v shape
    U = build(u1(), u1(), truncation=8)
    og = equivariant_curvature(U)[0]
    value = Scalar.from_rational(3, 2)
    got = og.evaluate_chi([value])
    assert got == U.Omega(0) - U.mu(0, 0) * value


def test_universal_connection_horizontal():
    for g, h in ((u1(), u1()), (su2(), u1()), (su2(), su2())):
        T = TensorWeilAlgebra(g, h, truncation=8)
        assert verify_connection_horizontality(T).ok


def test_structure_equation_abelian_hand_expansion():
    # independent oracle: for commuting groups both sides must equal
    # Omega - theta^a rho_a - chi^a mu_a, assembled by hand
    g, h = abelian(2), u1()
    T = TensorWeilAlgebra(g, h, truncation=8)
    theta_w = T.universal_connection()[0]
    lhs = T.d(theta_w)  # bracket term vanishes
    want = T.conn.Omega(0)
    for a in range(2):
        want = want - T.weil.theta(a) * T.conn.rho(a, 0)
        want = want - T.weil.chi(a) * T.conn.mu(a, 0)
    assert lhs == want
    assert T.weil_model_curvature()[0] == want
    assert verify_structure_equation(T).ok


@pytest.mark.parametrize("gname,hname", [
    ("u1", "u1"), ("su2", "u1"), ("su2", "su2"), ("so3", "su2"),
])
def test_structure_equation_grid(gname, hname):
    table = {"u1": u1, "su2": su2, "so3": so3}
    T = TensorWeilAlgebra(table[gname](), table[hname](), truncation=8)
    assert verify_structure_equation(T).ok


def test_weil_curvature_nonabelian_double_contraction_term():
    # the (1/2) theta theta term carries f^c_{ab} mu_c + [mu_a, mu_b]
    g = h = su2()
    T = TensorWeilAlgebra(g, h, truncation=8)
    U = T.conn
    for a in range(3):
        for b in range(3):
            got = U.iota(b, U.rho(a, 0))
            want = U.zero()
            for c in range(3):
                f = g.structure(a, b, c)
                if not f.is_zero():
                    want = want + U.mu(c, 0) * f
            for j in range(3):
                for k in range(3):
                    cc = h.structure(j, k, 0)
                    if not cc.is_zero():
                        want = want + U.mu(a, j) * U.mu(b, k) * cc
            assert got == want


def test_cartan_image_matches_equivariant_curvature():
    for g, h in ((u1(), u1()), (su2(), u1()), (su2(), su2())):
        T = TensorWeilAlgebra(g, h, truncation=8)
        assert verify_cartan_image(T).ok


def test_covariant_closedness_and_traces():
    U = build(su2(), u2(), truncation=8)
    outcomes = verify_equivariant_closedness(U, rep=u2_rep(), max_trace_power=3)
    assert all(o.ok for o in outcomes)
    assert len(outcomes) == 4


def test_covariant_differential_is_nonzero_on_bare_curvature():
    # without the moment correction the curvature is not equivariantly closed
    U = build(su2(), su2(), truncation=8)
    bare = [CartanElement.from_graded(U.Omega(i), U) for i in range(3)]
    residual = covariant_cartan_differential(U, bare)
    assert any(not r.is_zero() for r in residual)
