import pytest

from equichern.cartan import CartanElement
from equichern.graded import GradedElement, graded_commutator
from equichern.lie import abelian, so3, su2, u1
from equichern.scalars import Scalar
from equichern.weil import WeilAlgebra

GRID = [u1(), abelian(3), su2(), so3()]


def test_nu_abelian_is_chi():
    W = WeilAlgebra(abelian(2), truncation=8)
    for a in range(2):
        assert W.nu(a) == W.chi(a)


def test_nu_su2_first_component():
    W = WeilAlgebra(su2(), truncation=8)
    assert W.nu(0) == W.chi(0) + W.theta(1) * W.theta(2)


def test_nu_index_out_of_range():
    with pytest.raises(IndexError):
        WeilAlgebra(su2()).nu(5)


def test_curvature_generators_horizontal():
    W = WeilAlgebra(su2(), truncation=8)
    for a in range(3):
        for b in range(3):
            assert W.iota(b, W.nu(a)).is_zero()


@pytest.mark.parametrize("g", GRID, ids=lambda g: g.name)
def test_d_squared_zero(g):
    W = WeilAlgebra(g, truncation=8)
    probes = [GradedElement.generator(x, 8) for x in W.generators()]
    if g.dim >= 2:
        probes.append(W.theta(0) * W.chi(1) + W.nu(min(1, g.dim - 1)) * 3)
    for p in probes:
        assert W.d(W.d(p)).is_zero()


@pytest.mark.parametrize("g", GRID, ids=lambda g: g.name)
def test_iota_anticommutators_and_lie_bracket(g):
    W = WeilAlgebra(g, truncation=8)
    probes = [GradedElement.generator(x, 8) for x in W.generators()]
    for a in range(g.dim):
        for b in range(g.dim):
            for p in probes:
                anti = graded_commutator(W.iota_derivation(a), W.iota_derivation(b), p)
                assert anti.is_zero()
                lhs = W.lie(a, W.iota(b, p)) - W.iota(b, W.lie(a, p))
                rhs = GradedElement.zero(8)
                for c in range(g.dim):
                    f = g.structure(a, b, c)
                    if not f.is_zero():
                        rhs = rhs + W.iota(c, p) * f
                assert lhs == rhs


@pytest.mark.parametrize("g", GRID, ids=lambda g: g.name)
def test_bianchi(g):
    W = WeilAlgebra(g, truncation=8)
    for a in range(g.dim):
        want = W.zero()
        for b in range(g.dim):
            for c in range(g.dim):
                f = g.structure(b, c, a)
                if not f.is_zero():
                    want = want - W.theta(b) * W.nu(c) * f
        assert W.d(W.nu(a)) == want


def test_is_basic_witnesses():
    W = WeilAlgebra(su2(), truncation=8)
    invariant = sum((W.nu(a) * W.nu(a) for a in range(3)), W.zero())
    ok, witness = W.is_basic(invariant)
    assert ok and witness is None

    ok, witness = W.is_basic(W.theta(0))
    assert not ok and witness == "iota[0]"

    ok, _ = W.is_basic(W.one())
    assert ok

    # nu^1 nu^1 alone is horizontal but not invariant
    ok, witness = W.is_basic(W.nu(0) * W.nu(0))
    assert not ok and witness.startswith("lie")


def test_augmentation_examples():
    W = WeilAlgebra(su2(), truncation=8)
    assert W.augmentation(W.theta(0) * W.chi(1)).is_zero()

    got = W.augmentation(W.nu(0) * W.nu(1))
    want = CartanElement.chi(W, 0) * CartanElement.chi(W, 1)
    assert got == want


def test_augmentation_is_chain_map_on_basics():
    for g in (su2(), so3()):
        W = WeilAlgebra(g, truncation=8)
        invariant = sum((W.nu(a) * W.nu(a) for a in range(g.dim)), W.zero())
        for x in (invariant, invariant * invariant):
            assert W.augmentation(W.d(x)) == W.augmentation(x).differential()


def test_cartan_differential_examples():
    W = WeilAlgebra(su2(), truncation=8)
    chi1 = CartanElement.chi(W, 0)
    assert chi1.differential().is_zero()

    # horizontal, invariant carrier element: the differential reduces to d
    invariant = sum((W.nu(a) * W.nu(a) for a in range(3)), W.zero())
    c = CartanElement.from_graded(invariant, W)
    assert c.differential() == CartanElement.from_graded(W.d(invariant), W)


def test_cartan_square_zero_on_invariants():
    W = WeilAlgebra(su2(), truncation=8)
    invariant = sum((W.nu(a) * W.nu(a) for a in range(3)), W.zero())
    chern_simons = sum((W.theta(a) * W.nu(a) for a in range(3)), W.zero())
    for coeff in (W.one(), invariant, chern_simons):
        c = CartanElement.from_graded(coeff, W)
        for a in range(3):
            c = c + CartanElement.chi(W, a) * coeff
        assert c.differential().differential().is_zero()


def test_cartan_square_detects_noninvariance():
    # on a non-invariant coefficient the square is -chi^a L_a, nonzero
    W = WeilAlgebra(su2(), truncation=8)
    c = CartanElement.from_graded(W.theta(0), W)
    assert not c.differential().differential().is_zero()


def test_evaluate_chi():
    W = WeilAlgebra(su2(), truncation=8)
    c = CartanElement.from_graded(W.nu(0), W) - CartanElement.chi(W, 1) * 2
    vals = [Scalar.zero(), Scalar.from_rational(5), Scalar.zero()]
    assert c.evaluate_chi(vals) == W.nu(0) - GradedElement.scalar(10, 8)
