"""The Weil algebra W(g): free graded algebra on theta^a (deg 1), chi^a (deg 2).

Differential and contraction tables:

    d theta^a = chi^a            iota_b theta^a = delta^a_b
    d chi^a   = 0                iota_b chi^a   = -f^a_{bc} theta^c

The contraction on chi is the unique choice making the curvature generators
nu^a = chi^a + (1/2) f^a_{bc} theta^b theta^c horizontal.  Lie derivatives are
always the derived operator L_a = d iota_a + iota_a d, never tabulated.
"""

from __future__ import annotations

from .cartan import CartanElement
from .graded import Derivation, GradedElement, Generator
from .lie import LieAlgebraData
from .scalars import Scalar


class WeilAlgebra:
    def __init__(self, g: LieAlgebraData, truncation: int = 8):
        self.g = g
        self.truncation = truncation
        self.dim_g = g.dim
        self._theta = tuple(
            Generator("theta", 1, (("g", a),)) for a in range(g.dim)
        )
        self._chi = tuple(
            Generator("chi", 2, (("g", a),)) for a in range(g.dim)
        )
        d_action = {}
        for a in range(g.dim):
            d_action[self._theta[a]] = self._elt(self._chi[a])
            d_action[self._chi[a]] = self.zero()
        self._d = Derivation("d", 1, d_action)
        self._iota = []
        for b in range(g.dim):
            action = {}
            for a in range(g.dim):
                action[self._theta[a]] = (
                    self.one() if a == b else self.zero()
                )
                # iota_b chi^a = -f^a_{bc} theta^c
                img = self.zero()
                for c in range(g.dim):
                    fc = g.structure(b, c, a)
                    if not fc.is_zero():
                        img = img - self._elt(self._theta[c]) * fc
                action[self._chi[a]] = img
            self._iota.append(Derivation(f"iota[{b}]", -1, action))

    # -- element builders ---------------------------------------------------

    def _elt(self, gen: Generator) -> GradedElement:
        return GradedElement.generator(gen, self.truncation)

    def zero(self) -> GradedElement:
        return GradedElement.zero(self.truncation)

    def one(self) -> GradedElement:
        return GradedElement.one(self.truncation)

    def theta(self, a: int) -> GradedElement:
        return self._elt(self._theta[a])

    def chi(self, a: int) -> GradedElement:
        return self._elt(self._chi[a])

    def theta_generator(self, a: int) -> Generator:
        return self._theta[a]

    def chi_generator(self, a: int) -> Generator:
        return self._chi[a]

    def generators(self):
        return self._theta + self._chi

    # -- Cartan calculus ------------------------------------------------------

    @property
    def d_derivation(self) -> Derivation:
        return self._d

    def iota_derivation(self, a: int) -> Derivation:
        return self._iota[a]

    def d(self, x: GradedElement) -> GradedElement:
        return self._d(x)

    def iota(self, a: int, x: GradedElement) -> GradedElement:
        return self._iota[a](x)

    def lie(self, a: int, x: GradedElement) -> GradedElement:
        return self.d(self.iota(a, x)) + self.iota(a, self.d(x))

    def nu(self, a: int) -> GradedElement:
        """Curvature generator nu^a = chi^a + (1/2) f^a_{bc} theta^b theta^c."""
        if not 0 <= a < self.dim_g:
            raise IndexError(f"index {a} out of range for {self.g.name}")
        out = self.chi(a)
        half = Scalar.from_rational(1, 2)
        for b in range(self.dim_g):
            for c in range(self.dim_g):
                fa = self.g.structure(b, c, a)
                if not fa.is_zero():
                    out = out + self.theta(b) * self.theta(c) * (fa * half)
        return out

    # -- basic subcomplex and the Cartan map --------------------------------

    def is_basic(self, x: GradedElement):
        """True iff iota_a x = 0 and L_a x = 0 for all a; witness on failure."""
        for a in range(self.dim_g):
            if not self.iota(a, x).is_zero():
                return False, f"iota[{a}]"
        for a in range(self.dim_g):
            if not self.lie(a, x).is_zero():
                return False, f"lie[{a}]"
        return True, None

    def augmentation(self, x: GradedElement, carrier=None) -> CartanElement:
        """Cartan map theta^a -> 0, chi^a -> chi^a (hence nu^a -> chi^a)."""
        return generators_to_cartan(
            x,
            kill=set(self._theta),
            chi_index={gen: a for a, gen in enumerate(self._chi)},
            carrier=carrier if carrier is not None else self,
        )


def generators_to_cartan(x, kill, chi_index, carrier) -> CartanElement:
    """Split monomials into chi-symbol part and residual coefficient.

    Generators in `kill` send the whole monomial to zero; generators in
    `chi_index` become commuting chi symbols; everything else stays in the
    coefficient.
    """
    result = CartanElement.zero(carrier)
    for key, coeff in x.monomials.items():
        if any(g in kill for g in key):
            continue
        chis = []
        residual = []
        for g in key:
            if g in chi_index:
                chis.append(chi_index[g])
            else:
                residual.append(g)
        term = CartanElement(
            {tuple(sorted(chis)): GradedElement({tuple(residual): coeff}, x.truncation)},
            carrier,
        )
        result = result + term
    return result
