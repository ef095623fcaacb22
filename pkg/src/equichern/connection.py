"""Universal symbolic model of an invariant principal connection.

The free differential graded algebra on the connection data of an
H-connection preserved by a G-action: generators Theta^i (degree 1),
Omega^i (degree 2), mu_a^i (degree 0, the contraction of Theta along the
symmetry direction a), rho_a^i (degree 1, the contraction of Omega).  The
differential and contraction tables encode exactly the relations forced by
invariance, with c the structure constants of h and f those of g:

    d Theta^i = Omega^i - (1/2) c^i_{jk} Theta^j Theta^k
    d Omega^i = c^i_{jk} Omega^j Theta^k
    d mu_a^i  = -rho_a^i + c^i_{jk} mu_a^j Theta^k
    d rho_a^i = -c^i_{jk} (rho_a^j Theta^k + Omega^j mu_a^k)

    iota_b Theta^i = mu_b^i          iota_b mu_a^i  = 0
    iota_b Omega^i = rho_b^i         iota_b rho_a^i = f^c_{ab} mu_c^i
                                                      + c^i_{jk} mu_a^j mu_b^k

Every identity asserted downstream (the curvature structure equation, the
Cartan-model image, covariant closedness of the equivariant curvature) is a
consequence of these tables, so exact verification here is a proof-level
check; concrete bundles are handled by the numerical oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import CartanElement
from .graded import Derivation, GradedElement, Generator, graded_commutator
from .lie import LieAlgebraData, MatrixRep
from .ringmat import rep_matrix
from .scalars import Scalar
from .weil import WeilAlgebra, generators_to_cartan


class AlgebraConsistencyError(RuntimeError):
    """The derivation tables violate d^2 = 0 or the contraction relations."""


@dataclass
class CheckOutcome:
    name: str
    ok: bool
    detail: str = ""

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        return f"{self.name}: {status}" + (f" ({self.detail})" if self.detail else "")


class UniversalConnectionAlgebra:
    def __init__(self, g: LieAlgebraData, h: LieAlgebraData, truncation: int = 8,
                 check: bool = True):
        self.g = g
        self.h = h
        self.truncation = truncation
        self.dim_g = g.dim
        self.dim_h = h.dim

        self._Theta = tuple(Generator("Theta", 1, (("h", i),)) for i in range(h.dim))
        self._Omega = tuple(Generator("Omega", 2, (("h", i),)) for i in range(h.dim))
        self._mu = tuple(
            tuple(Generator("mu", 0, (("g", a), ("h", i))) for i in range(h.dim))
            for a in range(g.dim)
        )
        self._rho = tuple(
            tuple(Generator("rho", 1, (("g", a), ("h", i))) for i in range(h.dim))
            for a in range(g.dim)
        )

        self._d = Derivation("d", 1, self._build_d_action())
        self._iota = tuple(
            Derivation(f"iota[{b}]", -1, self._build_iota_action(b))
            for b in range(g.dim)
        )
        if check:
            failures = [c for c in self.consistency_report() if not c.ok]
            if failures:
                raise AlgebraConsistencyError(
                    "; ".join(str(c) for c in failures)
                )

    # -- table construction ---------------------------------------------

    def _c(self, j, k, i) -> Scalar:
        return self.h.structure(j, k, i)

    def _build_d_action(self):
        action = {}
        half = Scalar.from_rational(1, 2)
        for i in range(self.dim_h):
            img = self.Omega(i)
            for j in range(self.dim_h):
                for k in range(self.dim_h):
                    c = self._c(j, k, i)
                    if not c.is_zero():
                        img = img - self.Theta(j) * self.Theta(k) * (c * half)
            action[self._Theta[i]] = img

            img = self.zero()
            for j in range(self.dim_h):
                for k in range(self.dim_h):
                    c = self._c(j, k, i)
                    if not c.is_zero():
                        img = img + self.Omega(j) * self.Theta(k) * c
            action[self._Omega[i]] = img

        for a in range(self.dim_g):
            for i in range(self.dim_h):
                img = -self.rho(a, i)
                for j in range(self.dim_h):
                    for k in range(self.dim_h):
                        c = self._c(j, k, i)
                        if not c.is_zero():
                            img = img + self.mu(a, j) * self.Theta(k) * c
                action[self._mu[a][i]] = img

                img = self.zero()
                for j in range(self.dim_h):
                    for k in range(self.dim_h):
                        c = self._c(j, k, i)
                        if not c.is_zero():
                            img = img - (
                                self.rho(a, j) * self.Theta(k)
                                + self.Omega(j) * self.mu(a, k)
                            ) * c
                action[self._rho[a][i]] = img
        return action

    def _build_iota_action(self, b):
        action = {}
        for i in range(self.dim_h):
            action[self._Theta[i]] = self.mu(b, i)
            action[self._Omega[i]] = self.rho(b, i)
        for a in range(self.dim_g):
            for i in range(self.dim_h):
                action[self._mu[a][i]] = self.zero()
                img = self.zero()
                for c in range(self.dim_g):
                    fc = self.g.structure(a, b, c)
                    if not fc.is_zero():
                        img = img + self.mu(c, i) * fc
                for j in range(self.dim_h):
                    for k in range(self.dim_h):
                        cjk = self._c(j, k, i)
                        if not cjk.is_zero():
                            img = img + self.mu(a, j) * self.mu(b, k) * cjk
                action[self._rho[a][i]] = img
        return action

    # -- element builders ---------------------------------------------------

    def zero(self) -> GradedElement:
        return GradedElement.zero(self.truncation)

    def one(self) -> GradedElement:
        return GradedElement.one(self.truncation)

    def Theta(self, i) -> GradedElement:
        return GradedElement.generator(self._Theta[i], self.truncation)

    def Omega(self, i) -> GradedElement:
        return GradedElement.generator(self._Omega[i], self.truncation)

    def mu(self, a, i) -> GradedElement:
        return GradedElement.generator(self._mu[a][i], self.truncation)

    def rho(self, a, i) -> GradedElement:
        return GradedElement.generator(self._rho[a][i], self.truncation)

    def generators(self):
        out = list(self._Theta) + list(self._Omega)
        for a in range(self.dim_g):
            out.extend(self._mu[a])
            out.extend(self._rho[a])
        return tuple(out)

    # -- calculus ---------------------------------------------------------

    def d(self, x: GradedElement) -> GradedElement:
        return self._d(x)

    def iota(self, a, x: GradedElement) -> GradedElement:
        return self._iota[a](x)

    def lie(self, a, x: GradedElement) -> GradedElement:
        return self.d(self.iota(a, x)) + self.iota(a, self.d(x))

    def h_bracket(self, alpha, beta):
        """[alpha ^ beta]^i = c^i_{jk} alpha^j beta^k for h-valued forms."""
        out = []
        for i in range(self.dim_h):
            acc = self.zero()
            for j in range(self.dim_h):
                for k in range(self.dim_h):
                    c = self._c(j, k, i)
                    if not c.is_zero():
                        acc = acc + alpha[j] * beta[k] * c
            out.append(acc)
        return out

    # -- consistency suite -------------------------------------------------

    def consistency_report(self):
        checks = []
        gens = self.generators()
        probes = [GradedElement.generator(x, self.truncation) for x in gens]

        ok = all(self.d(self.d(p)).is_zero() for p in probes)
        checks.append(CheckOutcome("d_squared_on_generators", ok))

        ok = True
        for a in range(self.dim_g):
            for b in range(a, self.dim_g):
                for p in probes:
                    anti = graded_commutator(self._iota[a], self._iota[b], p)
                    if not anti.is_zero():
                        ok = False
        checks.append(CheckOutcome("iota_anticommutators", ok))

        ok = all(
            self.lie(a, self.Theta(i)).is_zero()
            for a in range(self.dim_g) for i in range(self.dim_h)
        )
        checks.append(CheckOutcome("lie_kills_connection", ok))

        ok = all(
            self.lie(a, self.Omega(i)).is_zero()
            for a in range(self.dim_g) for i in range(self.dim_h)
        )
        checks.append(CheckOutcome("lie_kills_curvature", ok))

        ok = True
        for a in range(self.dim_g):
            for b in range(self.dim_g):
                for i in range(self.dim_h):
                    want = self.zero()
                    for c in range(self.dim_g):
                        fc = self.g.structure(a, b, c)
                        if not fc.is_zero():
                            want = want + self.mu(c, i) * fc
                    if self.lie(a, self.mu(b, i)) != want:
                        ok = False
        checks.append(CheckOutcome("lie_rotates_moments", ok))

        ok = True
        for a in range(self.dim_g):
            for b in range(self.dim_g):
                for i in range(self.dim_h):
                    want = self.zero()
                    for c in range(self.dim_g):
                        fc = self.g.structure(a, b, c)
                        if not fc.is_zero():
                            want = want + self.rho(c, i) * fc
                    if self.lie(a, self.rho(b, i)) != want:
                        ok = False
        checks.append(CheckOutcome("lie_rotates_curvature_moments", ok))
        return checks


def build(g: LieAlgebraData, h: LieAlgebraData, truncation: int = 8) -> UniversalConnectionAlgebra:
    """Build the universal algebra, running the consistency suite loudly."""
    return UniversalConnectionAlgebra(g, h, truncation, check=True)


class TensorWeilAlgebra:
    """W(g) tensor the universal connection algebra, with total d and iota."""

    def __init__(self, g: LieAlgebraData, h: LieAlgebraData, truncation: int = 8):
        self.g = g
        self.h = h
        self.truncation = truncation
        self.dim_g = g.dim
        self.dim_h = h.dim
        self.weil = WeilAlgebra(g, truncation)
        self.conn = UniversalConnectionAlgebra(g, h, truncation, check=False)

        d_action = dict(self.weil.d_derivation.action)
        d_action.update(self.conn._d.action)
        self._d = Derivation("d", 1, d_action)
        iotas = []
        for a in range(g.dim):
            action = dict(self.weil.iota_derivation(a).action)
            action.update(self.conn._iota[a].action)
            iotas.append(Derivation(f"iota[{a}]", -1, action))
        self._iota = tuple(iotas)

    def d(self, x: GradedElement) -> GradedElement:
        return self._d(x)

    def iota(self, a, x: GradedElement) -> GradedElement:
        return self._iota[a](x)

    def lie(self, a, x: GradedElement) -> GradedElement:
        return self.d(self.iota(a, x)) + self.iota(a, self.d(x))

    def universal_connection(self):
        """Theta^i - theta^a mu_a^i: the connection of the induced bundle."""
        out = []
        for i in range(self.dim_h):
            acc = self.conn.Theta(i)
            for a in range(self.dim_g):
                acc = acc - self.weil.theta(a) * self.conn.mu(a, i)
            out.append(acc)
        return out

    def weil_model_curvature(self):
        """The Weil-model curvature expansion

        Omega^i - theta^a rho_a^i
                + (1/2) theta^a theta^b (iota_b iota_a Omega)^i
                - nu^a mu_a^i
        with the double contraction expanded through the tables.
        """
        half = Scalar.from_rational(1, 2)
        out = []
        for i in range(self.dim_h):
            acc = self.conn.Omega(i)
            for a in range(self.dim_g):
                acc = acc - self.weil.theta(a) * self.conn.rho(a, i)
            for a in range(self.dim_g):
                for b in range(self.dim_g):
                    double = self.conn.iota(b, self.conn.rho(a, i))
                    if not double.is_zero():
                        acc = acc + self.weil.theta(a) * self.weil.theta(b) * double * half
            for a in range(self.dim_g):
                acc = acc - self.weil.nu(a) * self.conn.mu(a, i)
            out.append(acc)
        return out

    def augment(self, x: GradedElement) -> CartanElement:
        """Cartan map on the tensor algebra: theta -> 0, chi -> chi symbols."""
        return generators_to_cartan(
            x,
            kill={self.weil.theta_generator(a) for a in range(self.dim_g)},
            chi_index={self.weil.chi_generator(a): a for a in range(self.dim_g)},
            carrier=self.conn,
        )


def equivariant_curvature(U: UniversalConnectionAlgebra):
    """Cartan-model curvature components Omega^i - chi^a mu_a^i."""
    out = []
    for i in range(U.dim_h):
        acc = CartanElement.from_graded(U.Omega(i), U)
        for a in range(U.dim_g):
            acc = acc - CartanElement({(a,): U.mu(a, i)}, U)
        out.append(acc)
    return out


def covariant_cartan_differential(U: UniversalConnectionAlgebra, vec):
    """(d + [Theta, .] - chi^a iota_a) on an h-vector of Cartan elements."""
    out = []
    for i in range(U.dim_h):
        acc = vec[i].differential()
        for j in range(U.dim_h):
            for k in range(U.dim_h):
                c = U._c(j, k, i)
                if not c.is_zero():
                    # Theta is chi-independent, so it acts coefficient-wise
                    acc = acc + (U.Theta(j) * c) * vec[k]
        out.append(acc)
    return out


def verify_structure_equation(T: TensorWeilAlgebra) -> CheckOutcome:
    """d(Theta_W) + (1/2)[Theta_W ^ Theta_W] must equal the Weil-model curvature."""
    theta_w = T.universal_connection()
    half = Scalar.from_rational(1, 2)
    bracket = T.conn.h_bracket(theta_w, theta_w)
    lhs = [T.d(theta_w[i]) + bracket[i] * half for i in range(T.dim_h)]
    rhs = T.weil_model_curvature()
    for i in range(T.dim_h):
        if lhs[i] != rhs[i]:
            return CheckOutcome(
                "structure_equation", False,
                f"component {i}: lhs={lhs[i]} rhs={rhs[i]}",
            )
    return CheckOutcome("structure_equation", True, "exact")


def verify_connection_horizontality(T: TensorWeilAlgebra) -> CheckOutcome:
    theta_w = T.universal_connection()
    for a in range(T.dim_g):
        for i in range(T.dim_h):
            if not T.iota(a, theta_w[i]).is_zero():
                return CheckOutcome(
                    "connection_horizontality", False, f"iota[{a}] on component {i}"
                )
    return CheckOutcome("connection_horizontality", True, "exact")


def verify_cartan_image(T: TensorWeilAlgebra) -> CheckOutcome:
    """Augmentation of the Weil-model curvature equals the Cartan-model one."""
    image = [T.augment(x) for x in T.weil_model_curvature()]
    target = equivariant_curvature(T.conn)
    for i in range(T.dim_h):
        if image[i] != target[i]:
            return CheckOutcome(
                "cartan_image", False,
                f"component {i}: image={image[i]} target={target[i]}",
            )
    return CheckOutcome("cartan_image", True, "exact")


def verify_equivariant_closedness(U: UniversalConnectionAlgebra,
                                  rep: MatrixRep | None = None,
                                  max_trace_power: int = 3):
    """Covariant Cartan differential kills the equivariant curvature.

    With a matrix representation the scalar traces tr(Omega_G^m) must be
    closed for the plain Cartan differential as well.
    """
    checks = []
    omega_g = equivariant_curvature(U)
    residual = covariant_cartan_differential(U, omega_g)
    ok = all(r.is_zero() for r in residual)
    detail = "exact" if ok else "; ".join(str(r) for r in residual if not r.is_zero())
    checks.append(CheckOutcome("covariant_closedness", ok, detail))

    if rep is not None:
        matrix = rep_matrix(omega_g, rep)
        power = matrix.identity()
        for m in range(1, max_trace_power + 1):
            power = power @ matrix
            closed = power.trace().differential()
            checks.append(
                CheckOutcome(
                    f"trace_closedness[m={m}]",
                    closed.is_zero(),
                    "exact" if closed.is_zero() else str(closed),
                )
            )
    return checks
