"""Cartan-model elements: polynomials in commuting degree-2 symbols chi^a.

Coefficients live in a carrier algebra that provides a differential d and
contractions iota_a (the Weil algebra, the universal connection algebra, or
anything else implementing the same protocol).  The total degree of a term is
the coefficient degree plus twice the chi-degree; the truncation bound is on
that total degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Protocol

from .graded import GradedElement
from .scalars import QI, Scalar


class GDifferentialCarrier(Protocol):
    dim_g: int
    truncation: int

    def d(self, x: GradedElement) -> GradedElement: ...

    def iota(self, a: int, x: GradedElement) -> GradedElement: ...


def _merge_chi(m1, m2):
    return tuple(sorted(m1 + m2))


class CartanElement:
    """Sum of chi^(multiset) * coefficient with graded coefficients."""

    __slots__ = ("terms", "carrier", "truncation")

    def __init__(self, terms, carrier, truncation=None):
        self.carrier = carrier
        self.truncation = truncation if truncation is not None else carrier.truncation
        cleaned = {}
        for key, coeff in (terms or {}).items():
            key = tuple(sorted(key))
            if not isinstance(coeff, GradedElement):
                coeff = GradedElement.scalar(coeff, self.truncation)
            if self.truncation is not None:
                coeff = coeff.truncate(self.truncation - 2 * len(key))
            if coeff.is_zero():
                continue
            cleaned[key] = coeff
        self.terms = cleaned

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, carrier, truncation=None) -> CartanElement:
        return cls({}, carrier, truncation)

    @classmethod
    def from_graded(cls, x: GradedElement, carrier, truncation=None) -> CartanElement:
        return cls({(): x}, carrier, truncation)

    @classmethod
    def chi(cls, carrier, a: int, truncation=None) -> CartanElement:
        if not 0 <= a < carrier.dim_g:
            raise IndexError(f"chi index {a} out of range")
        t = truncation if truncation is not None else carrier.truncation
        return cls({(a,): GradedElement.one(t)}, carrier, truncation)

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, chi_key) -> GradedElement:
        return self.terms.get(tuple(sorted(chi_key)), GradedElement.zero(self.truncation))

    def chi_degrees(self):
        return sorted({len(k) for k in self.terms})

    def total_degrees(self):
        out = set()
        for key, coeff in self.terms.items():
            for d in coeff.degrees():
                out.add(d + 2 * len(key))
        return sorted(out)

    def component(self, total_degree: int) -> CartanElement:
        terms = {}
        for key, coeff in self.terms.items():
            part = coeff.component(total_degree - 2 * len(key))
            if not part.is_zero():
                terms[key] = part
        return CartanElement(terms, self.carrier, self.truncation)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> CartanElement:
        if isinstance(other, CartanElement):
            return other
        if isinstance(other, GradedElement):
            return CartanElement.from_graded(other, self.carrier, self.truncation)
        if isinstance(other, (int, Fraction, QI, Scalar)):
            return CartanElement.from_graded(
                GradedElement.scalar(other, self.truncation), self.carrier, self.truncation
            )
        raise TypeError(f"cannot coerce {type(other).__name__} to CartanElement")

    def __add__(self, other) -> CartanElement:
        other = self._coerce(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, GradedElement.zero(self.truncation)) + v
        return CartanElement(terms, self.carrier, self.truncation)

    __radd__ = __add__

    def __sub__(self, other) -> CartanElement:
        return self + (-self._coerce(other))

    def __neg__(self) -> CartanElement:
        return CartanElement(
            {k: -v for k, v in self.terms.items()}, self.carrier, self.truncation
        )

    def __mul__(self, other) -> CartanElement:
        # chi symbols are even and central, so coefficients multiply directly
        if isinstance(other, (int, Fraction, QI, Scalar)):
            return CartanElement(
                {k: v * other for k, v in self.terms.items()},
                self.carrier, self.truncation,
            )
        other = self._coerce(other)
        terms = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                key = _merge_chi(k1, k2)
                if self.truncation is not None and 2 * len(key) > self.truncation:
                    continue
                prod = v1 * v2
                if self.truncation is not None:
                    prod = prod.truncate(self.truncation - 2 * len(key))
                if prod.is_zero():
                    continue
                terms[key] = terms.get(key, GradedElement.zero(self.truncation)) + prod
        return CartanElement(terms, self.carrier, self.truncation)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QI, Scalar)):
            return self * other
        if isinstance(other, GradedElement):
            # left multiplication by a graded element; chi's commute past it
            return CartanElement(
                {k: other * v for k, v in self.terms.items()},
                self.carrier, self.truncation,
            )
        return NotImplemented

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus -------------------------------------------------------------

    def differential(self) -> CartanElement:
        """The Cartan differential d - chi^a iota_a (chi symbols are closed)."""
        out = CartanElement.zero(self.carrier, self.truncation)
        for key, coeff in self.terms.items():
            out = out + CartanElement({key: self.carrier.d(coeff)}, self.carrier, self.truncation)
            for a in range(self.carrier.dim_g):
                contracted = self.carrier.iota(a, coeff)
                if not contracted.is_zero():
                    out = out - CartanElement(
                        {_merge_chi(key, (a,)): contracted},
                        self.carrier, self.truncation,
                    )
        return out

    def evaluate_chi(self, values) -> GradedElement:
        """Substitute chi^a -> values[a] (degree-0 scalars), e.g. F - v shapes."""
        if len(values) != self.carrier.dim_g:
            raise ValueError(f"expected {self.carrier.dim_g} chi values")
        out = GradedElement.zero(self.truncation)
        for key, coeff in self.terms.items():
            factor = Scalar.one()
            for a in key:
                factor = factor * values[a]
            out = out + coeff * factor
        return out

    # -- output -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms):
            chi = "*".join(f"chi[{a}]" for a in key) if key else "1"
            parts.append(f"{chi}*({self.terms[key]})")
        return " + ".join(parts)

    __repr__ = __str__


def cartan_differential(c: CartanElement) -> CartanElement:
    return c.differential()
