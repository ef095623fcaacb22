from fractions import Fraction

import numpy as np
import pytest

from equichern.anomaly import (ChiPolynomial, CrossValidationReport,
                               covariant_anomaly, cross_validate,
                               pushforward_point_base, two_form_component)
from equichern.cartan import CartanElement
from equichern.connection import build, equivariant_curvature
from equichern.geometry import (ChartPair, SphereGrid,
                                integrate_hemisphere_split, monopole)
from equichern.lie import u1
from equichern.ringmat import MatrixCurvature
from equichern.scalars import Scalar, TAU_NUMERIC
from equichern.series import CharSeries, equivariant_substitute

GRID = SphereGrid(200, 400)
LAMBDAS = (Fraction(1), Fraction(-1, 2), Fraction(2, 3))


def split(pair):
    return integrate_hemisphere_split(pair.north, pair.south, GRID)


def test_covariant_anomaly_zero_gauge():
    scn = monopole(1, GRID)
    zeros = np.zeros_like(scn.curvature.comps["dtheta^dphi"])
    got = covariant_anomaly(1, ChartPair(zeros, zeros), scn.curvature, split)
    assert got == 0


def test_covariant_anomaly_flat_bundle():
    scn = monopole(0, GRID)
    ones = np.ones_like(scn.curvature.comps["dtheta^dphi"])
    got = covariant_anomaly(1, ChartPair(1j * ones, 1j * ones), scn.curvature, split)
    assert abs(got) < 1e-15


def test_covariant_anomaly_scaling_exact():
    scn = monopole(2, GRID)
    ones = np.ones_like(scn.curvature.comps["dtheta^dphi"])
    base = covariant_anomaly(1, ChartPair(1j * ones, 1j * ones), scn.curvature, split)
    scaled = covariant_anomaly(1, ChartPair(5j * ones, 5j * ones), scn.curvature, split)
    assert abs(scaled - 5 * base) / abs(scaled) < 1e-14


def test_covariant_anomaly_prefactor():
    # n = 1: -tau (-tau^-1)^1 / 1! = 1, so the value is exactly the integral
    scn = monopole(1, GRID)
    ones = np.ones_like(scn.curvature.comps["dtheta^dphi"])
    got = covariant_anomaly(1, ChartPair(1j * ones, 1j * ones), scn.curvature, split)
    flux = split(ChartPair(scn.curvature, scn.curvature))
    assert abs(got - 1j * flux) < 1e-13


def test_covariant_anomaly_dimension_mismatch():
    scn = monopole(1, GRID)
    with pytest.raises(ValueError):
        covariant_anomaly(2, 1j, scn.curvature, split)


def test_two_form_component_zero_input():
    poly = ChiPolynomial({}, dim_g=1, truncation=6)
    etf = two_form_component(poly, fiber_dim=2)
    assert etf.omega == 0
    assert etf.moment[0] == 0


def test_two_form_component_truncation_guard():
    poly = ChiPolynomial({}, dim_g=1, truncation=2)
    with pytest.raises(ValueError):
        two_form_component(poly, fiber_dim=2)


def test_two_form_component_numeric_moment_sign():
    # omega_G = omega - chi mu: the chi coefficient of the tau-rescaled
    # pushforward is -mu
    poly = ChiPolynomial({(0,): 2.0 + 0j}, dim_g=1, truncation=6)
    etf = two_form_component(poly, fiber_dim=2)
    assert abs(etf.moment[0] - (-TAU_NUMERIC * 2.0)) < 1e-15


def test_two_form_component_symbolic():
    U = build(u1(), u1(), truncation=8)
    c = (CartanElement.from_graded(U.Omega(0), U)
         - CartanElement({(0,): U.mu(0, 0)}, U))
    etf = two_form_component(c, fiber_dim=0)
    assert etf.omega == U.Omega(0) * Scalar.tau(1)
    assert etf.moment[0] == U.mu(0, 0) * Scalar.tau(1)


def test_two_form_component_no_chi_dependence():
    U = build(u1(), u1(), truncation=8)
    c = CartanElement.from_graded(U.Omega(0), U)
    etf = two_form_component(c, fiber_dim=0)
    assert etf.moment[0].is_zero()


def test_two_form_component_reconstruction():
    # omega - sum_a chi^a moment(a) rebuilds the tau-rescaled degree-2 part
    U = build(u1(), u1(), truncation=8)
    c = (CartanElement.from_graded(U.Omega(0), U)
         - CartanElement({(0,): U.mu(0, 0) * 3}, U))
    etf = two_form_component(c, fiber_dim=0)
    rebuilt = (CartanElement.from_graded(etf.omega, U)
               - CartanElement.chi(U, 0) * etf.moment[0])
    assert rebuilt == c.component(2) * Scalar.tau(1)


def test_pushforward_point_base_selects_fiber_degree():
    U = build(u1(), u1(), truncation=8)
    pushed = equivariant_substitute(
        CharSeries.chern(), MatrixCurvature([[equivariant_curvature(U)[0]]]), 6
    )

    def table(n_curv, n_mom):
        if n_curv == 1:
            return complex(10 ** n_mom)
        return 0j

    poly = pushforward_point_base(pushed, table, fiber_dim=2)
    # chi-free entry: -tau^-1 * integral(Omega); chi-linear entry picks the
    # cross term of (1/2) tau^-2 (Omega - chi mu)^2, i.e. -tau^-2 * integral(Omega mu)
    tau = TAU_NUMERIC
    assert abs(poly.value(()) - (-1 / tau)) < 1e-15
    assert abs(poly.value((0,)) - (-10 / tau ** 2)) < 1e-14


@pytest.mark.parametrize("k", [1, -2])
def test_dual_path_agreement(k):
    scn = monopole(k, GRID, LAMBDAS)
    report = cross_validate(scn)
    assert isinstance(report, CrossValidationReport)
    assert report.ok
    assert len(report.records) == 9
    assert report.chern_number_residual < 1e-8 * max(1, abs(k))
    # the closed form evaluates to 2 pi lambda k for every generator
    for rec in report.records:
        lam = rec.gauge_value.imag
        want = 2 * np.pi * lam * k
        assert abs(rec.closed_form - want) < 1e-8 * max(1.0, abs(want))
        assert abs(rec.moment_weighted - rec.closed_form) < 1e-8 * abs(rec.closed_form)


def test_dual_path_chi_zero_consistency():
    # the chi-free entry of the pushforward reproduces the Chern number
    scn = monopole(3, GRID)
    report = cross_validate(scn, gauge_values=[Fraction(1)])
    assert report.chern_number_residual < 3e-8


def test_moment_weighted_vs_stripped_normalizations():
    scn = monopole(1, GRID, (Fraction(1),))
    report = cross_validate(scn)
    for rec in report.records:
        assert abs(rec.moment_weighted - TAU_NUMERIC * rec.moment_stripped) < 1e-12


def test_cross_validate_rejects_other_series():
    scn = monopole(1, GRID, (Fraction(1),))
    with pytest.raises(ValueError):
        cross_validate(scn, CharSeries.a_hat(8))
