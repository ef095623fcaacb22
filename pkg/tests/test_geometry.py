import numpy as np
import pytest

from equichern.geometry import (SampledForm, SphereGrid,
                                closedness_order_estimate, contract,
                                fd_exterior_derivative, integrate,
                                integrate_hemisphere_split, monopole,
                                rotation_commutator_residual, rotation_fields,
                                transition_residual, verify_pointwise)

GRID = SphereGrid(200, 400)


def test_area_weights_sum_to_sphere_area():
    assert abs(GRID.area_weights.sum() - 4 * np.pi) / (4 * np.pi) < 1e-12


def test_quadrature_exactness_on_polynomial_trig_integrand():
    # integral over S^2 of cos^2(theta) sin(theta) (1 + cos(2 phi)) dtheta dphi
    # = 2pi * 2/3 exactly; the rule must hit it at machine precision
    theta, phi = GRID.mesh()
    h = (np.cos(theta) ** 2) * np.sin(theta) * (1.0 + np.cos(2 * phi))
    got = integrate(SampledForm(2, {"dtheta^dphi": h}), GRID)
    want = 4 * np.pi / 3
    assert abs(got - want) / want < 1e-13


def test_integrate_rejects_low_degree():
    theta, _ = GRID.mesh()
    with pytest.raises(ValueError):
        integrate(SampledForm(0, {"f": np.cos(theta)}), GRID)


def test_monopole_zero_charge_is_flat():
    scn = monopole(0, GRID)
    assert np.abs(scn.potential["N"].comps["dphi"]).max() == 0
    assert np.abs(scn.curvature.comps["dtheta^dphi"]).max() == 0
    for ident in ("invariance", "double_contraction", "equivariant_closedness"):
        assert verify_pointwise(scn, ident).max_residual < 1e-15


@pytest.mark.parametrize("k", [-2, -1, 1, 2])
def test_flux_quantization(k):
    scn = monopole(k, GRID)
    flux = integrate(scn.curvature, GRID)
    want = -2j * np.pi * k
    assert abs(flux - want) / abs(want) < 1e-12
    # first Chern number (i/2pi) * flux = k
    chern = (1j / (2 * np.pi)) * flux
    assert abs(chern - k) < 1e-12


def test_transition_function():
    scn = monopole(3, GRID)
    assert transition_residual(scn) < 1e-10


def test_axial_rotation_field_is_phi_translation():
    rot = rotation_fields(GRID)
    assert np.abs(rot[2].v_theta).max() == 0
    assert np.abs(rot[2].v_phi - 1).max() == 0


def test_contraction_of_phi_form_with_axial_field():
    theta, _ = GRID.mesh()
    dphi_form = SampledForm(1, {"dtheta": np.zeros_like(theta),
                                "dphi": np.ones_like(theta)})
    rot = rotation_fields(GRID)
    assert np.abs(contract(rot[2], dphi_form).comps["f"] - 1).max() == 0


def test_rotation_commutators_close():
    assert rotation_commutator_residual(GRID) < 1e-6


def test_fd_derivative_accuracy():
    theta, _ = GRID.mesh()
    f = SampledForm(0, {"f": np.cos(theta)})
    df = fd_exterior_derivative(f, GRID)
    assert np.abs(df.comps["dtheta"] + np.sin(theta)).max() < 1e-8
    # phi-independent input: spectral derivative vanishes to roundoff
    assert np.abs(df.comps["dphi"]).max() < 1e-12


def test_fd_top_degree_rejected():
    theta, _ = GRID.mesh()
    top = SampledForm(2, {"dtheta^dphi": np.sin(theta)})
    with pytest.raises(ValueError):
        fd_exterior_derivative(top, GRID)


def test_spectral_phi_derivative_exact_on_trig():
    theta, phi = GRID.mesh()
    f = SampledForm(0, {"f": np.sin(3 * phi) + np.cos(theta)})
    df = fd_exterior_derivative(f, GRID)
    assert np.abs(df.comps["dphi"] - 3 * np.cos(3 * phi)).max() < 1e-11


@pytest.mark.parametrize("k", [1, -3])
def test_pointwise_identities(k):
    scn = monopole(k, GRID)
    assert verify_pointwise(scn, "double_contraction").max_residual < 1e-6
    assert verify_pointwise(scn, "invariance").max_residual < 1e-6
    assert verify_pointwise(scn, "equivariant_closedness").max_residual < 1e-6


def test_unknown_identity_rejected():
    scn = monopole(1, GRID)
    with pytest.raises(ValueError):
        verify_pointwise(scn, "bianchi")


def test_moments_glue_across_charts():
    scn = monopole(2, GRID)
    for a in range(3):
        diff = scn.moment(a, "N").comps["f"] - scn.moment(a, "S").comps["f"]
        assert np.abs(diff).max() < 1e-12


def test_raw_axial_moment_chart_shift():
    # iota_3 A differs across charts by the transition contribution -ik
    scn = monopole(2, GRID)
    shift = scn.axial_chart_shift()
    assert abs(shift - (-2j)) < 1e-12
    diff = scn.raw_moment(2, "N").comps["f"] - scn.raw_moment(2, "S").comps["f"]
    assert np.abs(diff - shift).max() < 1e-12


def test_hemisphere_split_integral_matches_single_chart_for_global_forms():
    scn = monopole(1, GRID)
    split = integrate_hemisphere_split(scn.curvature, scn.curvature, GRID)
    single = integrate(scn.curvature, GRID)
    assert abs(split - single) < 1e-14


def test_moment_weighted_integral_chart_independent():
    # with the lift-corrected moments the integrand is global: integrating
    # north-chart samples equals integrating south-chart samples
    scn = monopole(2, GRID)
    f = scn.curvature.comps["dtheta^dphi"]
    for a in range(3):
        v_n = scn.moment(a, "N").comps["f"]
        v_s = scn.moment(a, "S").comps["f"]
        i_n = integrate(SampledForm(2, {"dtheta^dphi": f * v_n}), GRID)
        i_s = integrate(SampledForm(2, {"dtheta^dphi": f * v_s}), GRID)
        assert abs(i_n - i_s) < 1e-10


def test_closedness_residual_shrinks_at_documented_order():
    residuals, orders = closedness_order_estimate(1)
    assert residuals[0] > residuals[-1]
    assert all(o > 3.5 for o in orders)


def test_grid_rejects_tiny_sizes():
    with pytest.raises(ValueError):
        SphereGrid(3, 8)
