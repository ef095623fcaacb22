"""Numerical oracle: monopole bundles on the two-sphere with rotational symmetry.

Charts are the two standard gauges on shared (theta, phi) coordinates; chart
domains exclude the poles.  Quadrature is Gauss-Legendre in cos(theta) crossed
with the uniform periodic trapezoid rule in phi, which integrates
polynomial-in-cos(theta) times trigonometric-in-phi integrands to machine
precision (exact for polynomial degree <= 2*n_theta - 1 and trigonometric
degree < n_phi).  Derivatives are finite differences: order-4 stencils on the
Legendre nodes in theta, spectral differencing in phi.  Summation order is
fixed, so every result is bit-reproducible.

Sign conventions: the charge-k potentials are

    A_N = -(ik/2)(1 - cos theta) dphi      A_S = +(ik/2)(1 + cos theta) dphi

so F = dA = -(ik/2) sin theta dtheta^dphi in both charts, the transition is
A_N - A_S = -ik dphi, the total flux is -2 pi i k, and the first Chern number
(i/2pi) * flux equals k.

The rotation generators are sampled with the basis

    L_1 =  sin phi d/dtheta + cot theta cos phi d/dphi
    L_2 =  cos phi d/dtheta - cot theta sin phi d/dphi
    L_3 =  d/dphi

whose commutators close with the epsilon structure constants and whose third
member is the axial field.  The group action on the total space carries
vertical components over each chart (the lift data); the moment functions are
the chart contraction of the potential plus that vertical part, and the
invariance identity d(mu_a) + iota_a F = 0 validates the lift numerically.
The raw chart contractions iota_a A are reported too: for the axial generator
they differ from the moment by the constant +-ik/2 (the transition
contribution), which the reports record.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

CAP_ANGLE = 2.2  # pointwise checks stay on the chart's regular cap


# ---------------------------------------------------------------------------
# Grid and calculus


def fornberg_weights(z, nodes):
    """First-derivative weights at z over arbitrary nodes (Fornberg 1988)."""
    n = len(nodes)
    c = np.zeros((n, 2))
    c1 = 1.0
    c4 = nodes[0] - z
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, 1)
        c2 = 1.0
        c5 = c4
        c4 = nodes[i] - z
        for j in range(i):
            c3 = nodes[i] - nodes[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, 1]


class SphereGrid:
    """Gauss-Legendre nodes in cos(theta) crossed with uniform periodic phi."""

    def __init__(self, n_theta: int, n_phi: int, fd_order: int = 4):
        if n_theta < fd_order + 1 or n_phi < 4:
            raise ValueError("grid too small")
        self.n_theta = n_theta
        self.n_phi = n_phi
        self.fd_order = fd_order
        x, w = np.polynomial.legendre.leggauss(n_theta)
        # ascending theta; x = cos(theta) is then descending
        self.theta = np.arccos(x)[::-1].copy()
        self.x = np.cos(self.theta)
        self.w = w[::-1].copy()
        self.phi = np.arange(n_phi) * (2.0 * np.pi / n_phi)
        self.dphi = 2.0 * np.pi / n_phi
        self._dtheta_matrix = None

    @property
    def area_weights(self) -> np.ndarray:
        """Weights of the measure sin(theta) dtheta dphi; they sum to 4 pi."""
        return np.outer(self.w, np.full(self.n_phi, self.dphi))

    def mesh(self):
        return np.meshgrid(self.theta, self.phi, indexing="ij")

    def theta_derivative_matrix(self) -> np.ndarray:
        if self._dtheta_matrix is None:
            n = self.n_theta
            width = self.fd_order + 1
            D = np.zeros((n, n))
            for i in range(n):
                start = min(max(i - width // 2, 0), n - width)
                sl = slice(start, start + width)
                D[i, sl] = fornberg_weights(self.theta[i], self.theta[sl])
            self._dtheta_matrix = D
        return self._dtheta_matrix

    def d_theta(self, values: np.ndarray) -> np.ndarray:
        return self.theta_derivative_matrix() @ values

    def d_phi(self, values: np.ndarray) -> np.ndarray:
        """Spectral derivative along the periodic phi axis."""
        coeffs = np.fft.fft(values, axis=1)
        freqs = np.fft.fftfreq(self.n_phi, d=1.0 / self.n_phi)
        if self.n_phi % 2 == 0:
            freqs = freqs.copy()
            freqs[self.n_phi // 2] = 0.0  # drop the unpaired Nyquist mode
        return np.fft.ifft(coeffs * (1j * freqs), axis=1)


@dataclass
class SampledForm:
    """Chart-wise samples of a differential form of degree 0, 1 or 2."""

    degree: int
    comps: dict
    chart: str = "N"

    KEYS = {0: ("f",), 1: ("dtheta", "dphi"), 2: ("dtheta^dphi",)}

    def __post_init__(self):
        expected = self.KEYS[self.degree]
        missing = [k for k in expected if k not in self.comps]
        if missing:
            raise ValueError(f"degree-{self.degree} form missing components {missing}")
        self.comps = {k: np.asarray(self.comps[k], dtype=complex) for k in expected}

    def __add__(self, other):
        return SampledForm(
            self.degree,
            {k: self.comps[k] + other.comps[k] for k in self.comps},
            self.chart,
        )

    def __sub__(self, other):
        return SampledForm(
            self.degree,
            {k: self.comps[k] - other.comps[k] for k in self.comps},
            self.chart,
        )

    def scale(self, s):
        return SampledForm(self.degree, {k: s * v for k, v in self.comps.items()}, self.chart)

    def max_abs(self, mask=None) -> float:
        out = 0.0
        for v in self.comps.values():
            vals = np.abs(v[mask]) if mask is not None else np.abs(v)
            if vals.size:
                out = max(out, float(vals.max()))
        return out


@dataclass
class VectorField:
    """Sampled vector field v^theta d/dtheta + v^phi d/dphi."""

    v_theta: np.ndarray
    v_phi: np.ndarray


@dataclass
class ChartPair:
    north: object
    south: object

    def __getitem__(self, chart):
        if chart in ("N", "north"):
            return self.north
        if chart in ("S", "south"):
            return self.south
        raise KeyError(chart)


def fd_exterior_derivative(form: SampledForm, grid: SphereGrid) -> SampledForm:
    """Exterior derivative by finite differences (theta) and spectral phi."""
    if form.degree == 0:
        f = form.comps["f"]
        return SampledForm(
            1, {"dtheta": grid.d_theta(f), "dphi": grid.d_phi(f)}, form.chart
        )
    if form.degree == 1:
        wt = form.comps["dtheta"]
        wp = form.comps["dphi"]
        return SampledForm(
            2, {"dtheta^dphi": grid.d_theta(wp) - grid.d_phi(wt)}, form.chart
        )
    raise ValueError("exterior derivative of a top-degree form")


def contract(v: VectorField, form: SampledForm) -> SampledForm:
    """Interior product iota_v."""
    if form.degree == 1:
        return SampledForm(
            0,
            {"f": v.v_theta * form.comps["dtheta"] + v.v_phi * form.comps["dphi"]},
            form.chart,
        )
    if form.degree == 2:
        h = form.comps["dtheta^dphi"]
        return SampledForm(
            1, {"dtheta": -v.v_phi * h, "dphi": v.v_theta * h}, form.chart
        )
    raise ValueError("cannot contract a 0-form")


def integrate(form: SampledForm, grid: SphereGrid) -> complex:
    """Quadrature of a 2-form h dtheta^dphi over the sphere.

    The Legendre rule integrates in x = cos(theta), so the h samples are
    divided by sin(theta) and summed in fixed order.
    """
    if form.degree != 2:
        raise ValueError("integration requires a 2-form")
    h = form.comps["dtheta^dphi"]
    sin_t = np.sin(grid.theta)[:, None]
    return complex(np.sum((h / sin_t) * grid.w[:, None]) * grid.dphi)


def integrate_hemisphere_split(north: SampledForm, south: SampledForm,
                               grid: SphereGrid) -> complex:
    """Integrate taking north-chart data above the equator, south below."""
    hn = north.comps["dtheta^dphi"]
    hs = south.comps["dtheta^dphi"]
    mask = (grid.x > 0)[:, None]
    h = np.where(mask, hn, hs)
    sin_t = np.sin(grid.theta)[:, None]
    return complex(np.sum((h / sin_t) * grid.w[:, None]) * grid.dphi)


# ---------------------------------------------------------------------------
# Rotation fields


def rotation_field_functions():
    """The three so(3) generators as coordinate component callables."""
    def l1(theta, phi):
        return np.sin(phi), np.cos(phi) / np.tan(theta)

    def l2(theta, phi):
        return np.cos(phi), -np.sin(phi) / np.tan(theta)

    def l3(theta, phi):
        return np.zeros_like(theta), np.ones_like(theta)

    return (l1, l2, l3)


def rotation_fields(grid: SphereGrid):
    """Samples of the rotation generators on the grid (all charts share them)."""
    theta, phi = grid.mesh()
    out = []
    for fn in rotation_field_functions():
        vt, vp = fn(theta, phi)
        out.append(VectorField(np.asarray(vt, dtype=complex), np.asarray(vp, dtype=complex)))
    return tuple(out)


def rotation_commutator_residual(grid: SphereGrid, step: float = 1e-4) -> float:
    """Finite-difference check that [L_a, L_b] = eps_abc L_c pointwise.

    Uses Richardson-extrapolated central differences of the analytic component
    functions at a subsample of regular nodes.
    """
    fns = rotation_field_functions()
    theta = grid.theta[(grid.theta > 0.4) & (grid.theta < np.pi - 0.4)][::5]
    phi = grid.phi[::5]
    th, ph = np.meshgrid(theta, phi, indexing="ij")

    def deriv(fn, comp, axis):
        def at(dt, dp):
            return fn(th + dt, ph + dp)[comp]
        h = step
        if axis == 0:
            d1 = (at(h, 0) - at(-h, 0)) / (2 * h)
            d2 = (at(h / 2, 0) - at(-h / 2, 0)) / h
        else:
            d1 = (at(0, h) - at(0, -h)) / (2 * h)
            d2 = (at(0, h / 2) - at(0, -h / 2)) / h
        return (4 * d2 - d1) / 3

    eps = {(0, 1): 2, (1, 2): 0, (2, 0): 1}
    worst = 0.0
    for (a, b), c in eps.items():
        fa, fb, fc = fns[a], fns[b], fns[c]
        va = fa(th, ph)
        vb = fb(th, ph)
        vc = fc(th, ph)
        for comp in (0, 1):
            db = va[0] * deriv(fb, comp, 0) + va[1] * deriv(fb, comp, 1)
            da = vb[0] * deriv(fa, comp, 0) + vb[1] * deriv(fa, comp, 1)
            residual = db - da - vc[comp]
            worst = max(worst, float(np.abs(residual).max()))
    return worst


# ---------------------------------------------------------------------------
# Monopole scenario


@dataclass
class MonopoleScenario:
    """Charge-k monopole with the rotational action and its lift data."""

    charge: int
    grid: SphereGrid
    gauge_values: tuple = ()
    potential: ChartPair = None
    curvature: SampledForm = None          # analytic samples, chart independent
    curvature_fd: ChartPair = None         # d(potential) by finite differences
    rotations: tuple = ()
    lift_vertical: ChartPair = None        # vertical components of the lifted action
    _moments: dict = field(default_factory=dict)

    def raw_moment(self, a: int, chart: str) -> SampledForm:
        """iota_a of the chart potential (gauge dependent)."""
        return contract(self.rotations[a], self.potential[chart])

    def moment(self, a: int, chart: str = "N") -> SampledForm:
        """The equivariant moment mu_a = iota_a A + (vertical lift component)."""
        key = (a, chart)
        if key not in self._moments:
            raw = self.raw_moment(a, chart)
            kappa = self.lift_vertical[chart][a]
            self._moments[key] = SampledForm(
                0, {"f": raw.comps["f"] + kappa.comps["f"]}, chart
            )
        return self._moments[key]

    def axial_chart_shift(self) -> complex:
        """Constant by which the raw axial moments differ across charts."""
        diff = self.raw_moment(2, "N").comps["f"] - self.raw_moment(2, "S").comps["f"]
        return complex(diff.flat[0])


def monopole(charge: int, grid: SphereGrid, gauge_values=()) -> MonopoleScenario:
    k = int(charge)
    theta, phi = grid.mesh()
    ik2 = 0.5j * k

    pot_n = SampledForm(1, {
        "dtheta": np.zeros_like(theta, dtype=complex),
        "dphi": -ik2 * (1.0 - np.cos(theta)),
    }, "N")
    pot_s = SampledForm(1, {
        "dtheta": np.zeros_like(theta, dtype=complex),
        "dphi": ik2 * (1.0 + np.cos(theta)),
    }, "S")

    curv = SampledForm(2, {"dtheta^dphi": -ik2 * np.sin(theta)}, "N")
    curv_fd = ChartPair(
        fd_exterior_derivative(pot_n, grid),
        fd_exterior_derivative(pot_s, grid),
    )

    tan_half = np.tan(theta / 2.0)
    cot_half = 1.0 / tan_half
    kappa_n = [
        SampledForm(0, {"f": -ik2 * np.cos(phi) * tan_half}, "N"),
        SampledForm(0, {"f": ik2 * np.sin(phi) * tan_half}, "N"),
        SampledForm(0, {"f": ik2 * np.ones_like(theta)}, "N"),
    ]
    kappa_s = [
        SampledForm(0, {"f": -ik2 * np.cos(phi) * cot_half}, "S"),
        SampledForm(0, {"f": ik2 * np.sin(phi) * cot_half}, "S"),
        SampledForm(0, {"f": -ik2 * np.ones_like(theta)}, "S"),
    ]

    return MonopoleScenario(
        charge=k,
        grid=grid,
        gauge_values=tuple(gauge_values),
        potential=ChartPair(pot_n, pot_s),
        curvature=curv,
        curvature_fd=curv_fd,
        rotations=rotation_fields(grid),
        lift_vertical=ChartPair(kappa_n, kappa_s),
    )


# ---------------------------------------------------------------------------
# Pointwise identity checks


@dataclass
class PointwiseReport:
    identity: str
    max_residual: float
    details: list = field(default_factory=list)

    def __str__(self):
        return f"{self.identity}: max residual {self.max_residual:.3e}"


def _cap_mask(grid: SphereGrid, chart: str) -> np.ndarray:
    if chart == "N":
        return (grid.theta <= CAP_ANGLE)[:, None] & np.ones(grid.n_phi, dtype=bool)
    return (grid.theta >= np.pi - CAP_ANGLE)[:, None] & np.ones(grid.n_phi, dtype=bool)


def transition_residual(scn: MonopoleScenario) -> float:
    """|A_N - A_S + ik dphi| at the nodes (both charts are regular off-pole)."""
    diff = scn.potential["N"].comps["dphi"] - scn.potential["S"].comps["dphi"]
    return float(np.abs(diff + 1j * scn.charge).max())


def verify_pointwise(scn: MonopoleScenario, identity: str) -> PointwiseReport:
    grid = scn.grid
    structure = {(0, 1): 2, (1, 2): 0, (2, 0): 1}  # eps_abc on index pairs
    worst = 0.0
    details = []

    if identity == "invariance":
        # d(iota_a A + kappa_a) + iota_a F = 0: the lifted action preserves
        # the connection; differentiates the sampled moment, contracts the
        # analytic curvature.
        for chart in ("N", "S"):
            mask = _cap_mask(grid, chart)
            for a in range(3):
                dmu = fd_exterior_derivative(scn.moment(a, chart), grid)
                residual = dmu + contract(scn.rotations[a], scn.curvature)
                r = residual.max_abs(mask)
                details.append(f"{chart} generator {a+1}: {r:.3e}")
                worst = max(worst, r)
    elif identity == "double_contraction":
        # iota_b iota_a F = f^c_{ab} mu_c (the bracket term vanishes for u(1))
        for chart in ("N", "S"):
            mask = _cap_mask(grid, chart)
            for (a, b), c in structure.items():
                inner = contract(scn.rotations[b], contract(scn.rotations[a], scn.curvature))
                residual = inner.comps["f"] - scn.moment(c, chart).comps["f"]
                r = float(np.abs(residual[mask]).max())
                details.append(f"{chart} pair ({a+1},{b+1}): {r:.3e}")
                worst = max(worst, r)
    elif identity == "equivariant_closedness":
        # chi-linear part of (d - chi^a iota_a)(F - chi^b mu_b):
        # d(mu_a) + iota_a F with the finite-difference curvature end to end
        for chart in ("N", "S"):
            mask = _cap_mask(grid, chart)
            for a in range(3):
                dmu = fd_exterior_derivative(scn.moment(a, chart), grid)
                residual = dmu + contract(scn.rotations[a], scn.curvature_fd[chart])
                r = residual.max_abs(mask)
                details.append(f"{chart} generator {a+1}: {r:.3e}")
                worst = max(worst, r)
    else:
        raise ValueError(f"unknown identity: {identity}")
    return PointwiseReport(identity, worst, details)


def closedness_order_estimate(charge: int, sizes=((25, 50), (50, 100), (100, 200))) -> list:
    """Observed convergence order of the closedness residual under refinement."""
    residuals = []
    for n_theta, n_phi in sizes:
        grid = SphereGrid(n_theta, n_phi)
        scn = monopole(charge, grid)
        residuals.append(verify_pointwise(scn, "equivariant_closedness").max_residual)
    orders = []
    for r0, r1 in zip(residuals, residuals[1:]):
        orders.append(float(np.log2(r0 / r1)))
    return residuals, orders
