"""Acceptance suite: one test per exit criterion, each printing a PASS line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
Tolerances are pinned here and nowhere else: exact (zero tolerance) for all
symbolic identities, 1e-12 relative for flux quadrature, 1e-6 for pointwise
finite-difference residuals, 1e-8 relative for the dual-path anomaly
agreement (absolute 1e-10 fallback only where the reference vanishes, i.e.
charge 0).
"""

from fractions import Fraction
import math

import numpy as np
import pytest

from equichern.anomaly import cross_validate
from equichern.connection import (TensorWeilAlgebra, UniversalConnectionAlgebra,
                                  build, verify_cartan_image,
                                  verify_equivariant_closedness,
                                  verify_structure_equation)
from equichern.geometry import (SphereGrid, closedness_order_estimate,
                                integrate, monopole, verify_pointwise)
from equichern.graded import GradedElement, graded_commutator
from equichern.lie import abelian, so3, su2, u1, u2, u2_rep
from equichern.reports import extract_machine_section
from equichern.scenario import parse_scenario
from equichern.series import bernoulli_numbers, ps_exp, sinh_ratio_log_coefficients
from equichern.suites import run
from equichern.weil import WeilAlgebra

WEIL_GRID = [("u1", u1), ("abelian(3)", lambda: abelian(3)), ("su2", su2), ("so3", so3)]
PAIR_GRID = [("u1", u1), ("su2", su2), ("so3", so3)]


def _announce(number, name):
    print(f"ACCEPTANCE {number} {name}: PASS")


def test_criterion_1_weil_calculus_exactness():
    for name, make in WEIL_GRID:
        g = make()
        W = WeilAlgebra(g, truncation=8)
        probes = [GradedElement.generator(x, 8) for x in W.generators()]
        if g.dim >= 2:
            probes.append(W.theta(0) * W.chi(1) + W.nu(1) * 2)
        for p in probes:
            assert W.d(W.d(p)).is_zero(), f"d^2 != 0 on W({name})"
        for a in range(g.dim):
            for b in range(g.dim):
                for p in probes:
                    assert graded_commutator(
                        W.iota_derivation(a), W.iota_derivation(b), p
                    ).is_zero(), f"contraction anticommutator on W({name})"
                    lhs = W.lie(a, W.iota(b, p)) - W.iota(b, W.lie(a, p))
                    rhs = GradedElement.zero(8)
                    for c in range(g.dim):
                        f = g.structure(a, b, c)
                        if not f.is_zero():
                            rhs = rhs + W.iota(c, p) * f
                    assert lhs == rhs, f"[L, iota] bracket on W({name})"
        for a in range(g.dim):
            want = W.zero()
            for b in range(g.dim):
                for c in range(g.dim):
                    f = g.structure(b, c, a)
                    if not f.is_zero():
                        want = want - W.theta(b) * W.nu(c) * f
            assert W.d(W.nu(a)) == want, f"Bianchi on W({name})"
    _announce(1, "Weil calculus exactness (zero tolerance, truncation 8)")


def test_criterion_2_cartan_image_of_weil_curvature():
    for gname, gmake in PAIR_GRID:
        for hname, hmake in PAIR_GRID:
            T = TensorWeilAlgebra(gmake(), hmake(), truncation=8)
            outcome = verify_cartan_image(T)
            assert outcome.ok, f"({gname},{hname}): {outcome.detail}"
    _announce(2, "augmented Weil-model curvature equals the Cartan-model curvature")


def test_criterion_3_structure_equation_universal():
    for gname, gmake in PAIR_GRID:
        for hname, hmake in PAIR_GRID:
            T = TensorWeilAlgebra(gmake(), hmake(), truncation=8)
            outcome = verify_structure_equation(T)
            assert outcome.ok, f"({gname},{hname}): {outcome.detail}"
    _announce(3, "universal curvature structure equation (exact on the full grid)")


def test_criterion_4_equivariant_closedness():
    for gname, gmake in PAIR_GRID:
        for hname, hmake in PAIR_GRID:
            U = UniversalConnectionAlgebra(gmake(), hmake(), truncation=8, check=False)
            outcomes = verify_equivariant_closedness(U)
            assert all(o.ok for o in outcomes), f"({gname},{hname})"
    U = build(su2(), u2(), truncation=8)
    outcomes = verify_equivariant_closedness(U, rep=u2_rep(), max_trace_power=3)
    assert all(o.ok for o in outcomes)
    assert len(outcomes) == 4  # covariant closedness plus traces m = 1..3
    _announce(4, "covariant Cartan closedness and u(2) trace closedness (exact)")


def test_criterion_5_series_oracle_agreement():
    # exp of the ch log-series reproduces 1/k!
    got = ps_exp([Fraction(0), Fraction(1)] + [Fraction(0)] * 7, 8)
    assert got == [Fraction(1, math.factorial(k)) for k in range(9)]
    # a_hat log coefficients from power-series division/log agree with the
    # Bernoulli closed form through degree 8
    b = sinh_ratio_log_coefficients(8)
    bern = bernoulli_numbers(8)
    for k in range(1, 5):
        assert b[2 * k] == -bern[2 * k] / (2 * k * math.factorial(2 * k))
    _announce(5, "series oracle self-consistency (exact through degree 8)")


def test_criterion_6_geometry_oracle_convergence():
    grid = SphereGrid(200, 400)
    for k in range(-2, 3):
        scn = monopole(k, grid)
        flux = integrate(scn.curvature, grid)
        want = -2j * np.pi * k
        if k == 0:
            assert abs(flux) < 1e-14
        else:
            assert abs(flux - want) / abs(want) < 1e-12
    scn = monopole(1, grid)
    assert verify_pointwise(scn, "double_contraction").max_residual < 1e-6
    assert verify_pointwise(scn, "equivariant_closedness").max_residual < 1e-6
    residuals, orders = closedness_order_estimate(1)
    assert all(o > 3.5 for o in orders), f"orders {orders}"
    _announce(6, "geometry oracle: flux 1e-12, pointwise 1e-6, 4th-order refinement")


def test_criterion_7_dual_path_anomaly():
    grid = SphereGrid(200, 400)
    lambdas = (Fraction(1), Fraction(-1, 2), Fraction(2, 3))
    for k in range(-3, 4):
        scn = monopole(k, grid, lambdas)
        report = cross_validate(scn)
        assert len(report.records) == 9
        for rec in report.records:
            denom = max(abs(rec.closed_form), abs(rec.moment_weighted))
            if denom > 1e-10:
                err = abs(rec.closed_form - rec.moment_weighted) / denom
                assert err < 1e-8, (
                    f"k={k} gen={rec.generator} lam={rec.gauge_value}: {err:.2e}"
                )
            else:
                assert abs(rec.closed_form - rec.moment_weighted) < 1e-10
    _announce(7, "dual-path covariant anomaly agreement (1e-8 relative, 7x3x3 grid)")


@pytest.mark.parametrize("scenario_name", ["su2_u1.scn", "monopole_k1.scn",
                                           "so3_u2_ahat.scn"])
def test_criterion_8_cli_determinism(scenario_name, capsys):
    from pathlib import Path

    from equichern.cli import main

    path = Path(__file__).resolve().parents[1] / "scenarios" / scenario_name
    assert main(["run", "--scenario", str(path), "--command", "all"]) == 0
    first = capsys.readouterr().out
    assert main(["run", "--scenario", str(path), "--command", "all"]) == 0
    second = capsys.readouterr().out
    assert extract_machine_section(first) == extract_machine_section(second)
    assert first.rstrip().endswith("END 0")
    with capsys.disabled():
        print(f"ACCEPTANCE 8 CLI determinism [{scenario_name}]: PASS")


def test_criterion_8_library_level_determinism():
    from pathlib import Path

    path = Path(__file__).resolve().parents[1] / "scenarios" / "su2_u1.scn"
    scenario = parse_scenario(path)
    first = run("all", scenario)
    second = run("all", scenario)
    assert first.machine_section() == second.machine_section()
    assert first.exit_code() == 0
    _announce(8, "byte-identical machine sections across runs")
