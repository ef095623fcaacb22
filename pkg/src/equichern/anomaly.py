"""Moment extraction from equivariant characteristic forms, cross-validated.

Two independent routes to the determinant-line moment of the monopole
scenario:

  * the closed form -tau * (-tau^-1)^n * (1/n!) * integral tr(v F^n),
    evaluated by quadrature on analytic data;
  * the chi-linear part of the pushed-forward equivariant Chern character,
    computed symbolically on the abelian universal algebra and evaluated on
    finite-difference curvature samples end to end.

The closed form carries one more factor of 2 pi i than the mechanical
chi-extraction of the pushforward; the comparison therefore reports the
moment in both normalizations ("weighted": with that factor, matching the
closed form; "stripped": without) and checks agreement after the exact
conversion.  All checks are on the agreement of the two routes, never on
preassigned numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cartan import CartanElement
from .connection import build, equivariant_curvature
from .geometry import (ChartPair, MonopoleScenario, SampledForm,
                       integrate_hemisphere_split)
from .lie import u1
from .ringmat import MatrixCurvature
from .scalars import Scalar, TAU_NUMERIC
from .series import CharSeries, equivariant_substitute


@dataclass
class ChiPolynomial:
    """Pushforward result: chi-monomial -> value (complex or Scalar)."""

    coefficients: dict
    dim_g: int
    truncation: int | None = None

    def value(self, key) -> complex:
        return self.coefficients.get(tuple(sorted(key)), 0j)


@dataclass
class EquivariantTwoForm:
    """The pair (omega, moment) with omega - sum_a chi^a moment(a) the
    total-degree-2 component of the tau-rescaled pushforward."""

    omega: object
    moment: dict

    def moment_vector(self):
        return [self.moment[a] for a in sorted(self.moment)]


def pushforward_point_base(c: CartanElement, integral_table, fiber_dim: int) -> ChiPolynomial:
    """Fiber-integrate a Cartan element over a point base.

    `integral_table(n_curvature, n_moment)` supplies the numeric integral of
    the monomial Omega^j mu^m; only monomials of form degree `fiber_dim`
    survive, everything else integrates to zero.
    """
    out = {}
    for chi_key, coeff in c.terms.items():
        acc = 0j
        for mono, scalar in coeff.monomials.items():
            form_degree = sum(g.degree for g in mono)
            if form_degree != fiber_dim:
                continue
            n_curv = sum(1 for g in mono if g.name == "Omega")
            n_mom = sum(1 for g in mono if g.name == "mu")
            if n_curv + n_mom != len(mono):
                raise KeyError(f"no integral rule for monomial {mono}")
            val = integral_table(n_curv, n_mom)
            acc += scalar.evaluate() * val
        if acc != 0:
            out[chi_key] = acc
    return ChiPolynomial(out, c.carrier.dim_g, c.truncation)


def two_form_component(c, fiber_dim: int) -> EquivariantTwoForm:
    """Total-degree-2 component of tau * (fiber-integrated Cartan element).

    Returns the ordinary 2-form part omega and the moment map values (the
    negated chi-linear coefficients).  Raises if the input truncation cannot
    hold degree 2 + fiber_dim.
    """
    tau = Scalar.tau(1)
    if isinstance(c, CartanElement):
        if c.truncation is not None and c.truncation < fiber_dim + 2:
            raise ValueError(
                f"truncation {c.truncation} below degree {fiber_dim + 2}"
            )
        omega = c.coefficient(()).component(2) * tau
        moment = {
            a: -(c.coefficient((a,)).component(0) * tau)
            for a in range(c.carrier.dim_g)
        }
        return EquivariantTwoForm(omega, moment)
    if isinstance(c, ChiPolynomial):
        if c.truncation is not None and c.truncation < fiber_dim + 2:
            raise ValueError(
                f"truncation {c.truncation} below degree {fiber_dim + 2}"
            )
        # over a point base the chi-free entry has residual degree 0, so the
        # ordinary 2-form part vanishes
        moment = {a: -TAU_NUMERIC * c.value((a,)) for a in range(c.dim_g)}
        return EquivariantTwoForm(0j, moment)
    raise TypeError(f"unsupported pushforward type {type(c).__name__}")


def covariant_anomaly(n: int, v, F, integrate_fn=None) -> complex:
    """-tau * (-tau^-1)^n * (1/n!) * integral tr(v F^n).

    For sampled data on the sphere n must be 1 (dim X = 2n); v is a constant
    or a per-chart array of gauge values, F the sampled curvature 2-form.
    """
    prefactor = Scalar.tau(1, -1) * Scalar.tau(-1, -1) ** n * Fraction(1, math.factorial(n))
    if isinstance(F, SampledForm):
        if F.degree != 2 or n != 1:
            raise ValueError(f"dimension mismatch: 2-sphere data requires n=1, got n={n}")
        if isinstance(v, ChartPair):
            h_n = v.north * F.comps["dtheta^dphi"]
            h_s = v.south * F.comps["dtheta^dphi"]
            integrand = ChartPair(
                SampledForm(2, {"dtheta^dphi": h_n}, "N"),
                SampledForm(2, {"dtheta^dphi": h_s}, "S"),
            )
        else:
            h = v * F.comps["dtheta^dphi"]
            form = SampledForm(2, {"dtheta^dphi": h}, F.chart)
            integrand = ChartPair(form, form)
        value = integrate_fn(integrand)
        return prefactor.evaluate() * value
    # generic route: the caller's functional already produced integral tr(v F^n)
    return prefactor.evaluate() * complex(F)


@dataclass
class DualPathRecord:
    generator: int
    gauge_value: complex
    closed_form: complex
    moment_weighted: complex
    moment_stripped: complex
    rel_error: float
    passed: bool

    def label(self) -> str:
        return f"gen={self.generator + 1}"


@dataclass
class CrossValidationReport:
    charge: int
    records: list = field(default_factory=list)
    chern_number_residual: float = 0.0
    axial_chart_shift: complex = 0j

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)


# agreement tolerance of the two routes; absolute fallback when the
# reference value vanishes (charge 0)
DUAL_PATH_RTOL = 1e-8
DUAL_PATH_ATOL = 1e-10


def cross_validate(scn: MonopoleScenario, series: CharSeries | None = None,
                   gauge_values=None) -> CrossValidationReport:
    """Dual-path agreement of the covariant anomaly on a monopole scenario.

    For each rotation generator and each gauge value i*lambda, the symmetry
    direction combines the lifted rotation with the constant gauge rotation;
    its moment function is mu_a + i*lambda.
    """
    if series is None:
        series = CharSeries.chern()
    if series.name != "ch":
        raise ValueError("the anomaly pipeline uses the Chern character")
    grid = scn.grid
    lambdas = list(gauge_values if gauge_values is not None else scn.gauge_values)
    if not lambdas:
        lambdas = [Fraction(1)]

    # symbolic route: the one-parameter abelian universal algebra
    U = build(u1(), u1(), truncation=6)
    omega_g = equivariant_curvature(U)
    pushed = equivariant_substitute(series, MatrixCurvature([[omega_g[0]]]), 6)

    def split_integral(form_n, form_s):
        return integrate_hemisphere_split(form_n, form_s, grid)

    report = CrossValidationReport(charge=scn.charge)
    report.axial_chart_shift = scn.axial_chart_shift()

    # chi -> 0 consistency: the chi-free entry of the pushforward must be the
    # first Chern number computed from finite-difference samples
    def table_plain(n_curv, n_mom):
        if n_curv == 1 and n_mom == 0:
            return split_integral(scn.curvature_fd["N"], scn.curvature_fd["S"])
        return 0j

    plain = pushforward_point_base(pushed, table_plain, fiber_dim=2)
    report.chern_number_residual = abs(plain.value(()) - scn.charge)

    for a in range(3):
        mu_n = scn.moment(a, "N").comps["f"]
        mu_s = scn.moment(a, "S").comps["f"]
        for lam in lambdas:
            v = 1j * complex(Fraction(lam))
            m_n = mu_n + v
            m_s = mu_s + v

            closed = covariant_anomaly(
                1, ChartPair(m_n, m_s), scn.curvature,
                integrate_fn=lambda pair: split_integral(pair.north, pair.south),
            )

            def table(n_curv, n_mom, m_n=m_n, m_s=m_s):
                if n_curv != 1:
                    return 0j
                f_n = scn.curvature_fd["N"].comps["dtheta^dphi"] * m_n**n_mom
                f_s = scn.curvature_fd["S"].comps["dtheta^dphi"] * m_s**n_mom
                return split_integral(
                    SampledForm(2, {"dtheta^dphi": f_n}, "N"),
                    SampledForm(2, {"dtheta^dphi": f_s}, "S"),
                )

            poly = pushforward_point_base(pushed, table, fiber_dim=2)
            etf = two_form_component(poly, fiber_dim=2)
            stripped = etf.moment[0]
            weighted = TAU_NUMERIC * stripped

            denom = max(abs(closed), abs(weighted))
            err = abs(closed - weighted)
            if denom > DUAL_PATH_ATOL:
                err = err / denom
            passed = err < (DUAL_PATH_RTOL if denom > DUAL_PATH_ATOL else 1.0)
            report.records.append(DualPathRecord(
                generator=a,
                gauge_value=v,
                closed_form=closed,
                moment_weighted=weighted,
                moment_stripped=stripped,
                rel_error=err,
                passed=passed,
            ))
    return report
