"""Free graded-commutative algebra kernel with Koszul signs and graded derivations.

Elements are normal-form sums of monomials in degree-labelled generators.  A
monomial is a tuple of generators sorted by (name, indices); odd generators
appear at most once (a repeated odd generator kills the monomial), even
generators may repeat.  The sign of a product is the parity of the
permutation restricted to odd generators, so equality of elements is exact
dictionary equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .scalars import QI, Scalar, as_scalar


class UnknownGeneratorError(KeyError):
    """A derivation or substitution has no image for a generator."""


class DegreeMismatchError(ValueError):
    """A substitution image is not homogeneous of the generator's degree."""


@dataclass(frozen=True)
class Generator:
    """A free generator: identity is (name, indices); degree fixes parity."""

    name: str
    degree: int
    indices: tuple = ()

    @property
    def sort_key(self):
        return (self.name, self.indices)

    @property
    def is_odd(self) -> bool:
        return bool(self.degree & 1)

    def label(self) -> str:
        if not self.indices:
            return self.name
        inner = ",".join(str(i) for _, i in self.indices)
        return f"{self.name}[{inner}]"


def _merge_keys(m1, m2):
    """Merge two canonical monomials.  Returns (sign, key) or (0, None)."""
    sign = 1
    # parity of the number of odd generators in each suffix of m1
    odd_suffix = [0] * (len(m1) + 1)
    for idx in range(len(m1) - 1, -1, -1):
        odd_suffix[idx] = odd_suffix[idx + 1] + (m1[idx].degree & 1)
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        if m2[j].sort_key < m1[i].sort_key:
            # m2[j] jumps left past every remaining generator of m1
            if m2[j].is_odd and odd_suffix[i] & 1:
                sign = -sign
            out.append(m2[j])
            j += 1
        else:
            out.append(m1[i])
            i += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    for p in range(1, len(out)):
        if out[p].is_odd and out[p] == out[p - 1]:
            return 0, None
    return sign, tuple(out)


def _key_degree(key) -> int:
    return sum(g.degree for g in key)


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class GradedElement:
    """Normal-form element of a free graded-commutative algebra.

    Carries an optional truncation degree: monomials above it are dropped
    eagerly, which keeps all expansions bounded.
    """

    __slots__ = ("monomials", "truncation")

    def __init__(self, monomials=None, truncation=None):
        self.truncation = truncation
        cleaned = {}
        if monomials:
            for key, coeff in monomials.items():
                coeff = as_scalar(coeff)
                if coeff.is_zero():
                    continue
                if truncation is not None and _key_degree(key) > truncation:
                    continue
                cleaned[key] = coeff
        self.monomials = cleaned

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, truncation=None) -> GradedElement:
        return cls({}, truncation)

    @classmethod
    def scalar(cls, value, truncation=None) -> GradedElement:
        return cls({(): as_scalar(value)}, truncation)

    @classmethod
    def one(cls, truncation=None) -> GradedElement:
        return cls.scalar(1, truncation)

    @classmethod
    def generator(cls, gen: Generator, truncation=None) -> GradedElement:
        return cls({(gen,): Scalar.one()}, truncation)

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.monomials

    def degrees(self):
        return sorted({_key_degree(k) for k in self.monomials})

    def homogeneous_degree(self):
        """Common degree of all monomials; None for 0; raises if mixed."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"element is not homogeneous: degrees {degs}")
        return degs[0]

    def component(self, degree: int) -> GradedElement:
        return GradedElement(
            {k: v for k, v in self.monomials.items() if _key_degree(k) == degree},
            self.truncation,
        )

    def truncate(self, max_degree: int) -> GradedElement:
        return GradedElement(
            {k: v for k, v in self.monomials.items() if _key_degree(k) <= max_degree},
            self.truncation,
        )

    def generators(self):
        seen = set()
        for key in self.monomials:
            seen.update(key)
        return seen

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> GradedElement:
        other = self._coerce(other)
        trunc = _min_trunc(self.truncation, other.truncation)
        terms = dict(self.monomials)
        for k, v in other.monomials.items():
            terms[k] = terms.get(k, Scalar.zero()) + v
        return GradedElement(terms, trunc)

    __radd__ = __add__

    def __sub__(self, other) -> GradedElement:
        return self + (-self._coerce(other))

    def __neg__(self) -> GradedElement:
        return GradedElement(
            {k: -v for k, v in self.monomials.items()}, self.truncation
        )

    def __mul__(self, other) -> GradedElement:
        if isinstance(other, (int, Fraction, QI, Scalar)):
            s = as_scalar(other)
            return GradedElement(
                {k: v * s for k, v in self.monomials.items()}, self.truncation
            )
        if not isinstance(other, GradedElement):
            return NotImplemented
        trunc = _min_trunc(self.truncation, other.truncation)
        terms = {}
        for k1, v1 in self.monomials.items():
            d1 = _key_degree(k1)
            for k2, v2 in other.monomials.items():
                if trunc is not None and d1 + _key_degree(k2) > trunc:
                    continue
                sign, key = _merge_keys(k1, k2)
                if sign == 0:
                    continue
                coeff = v1 * v2
                if sign < 0:
                    coeff = -coeff
                terms[key] = terms.get(key, Scalar.zero()) + coeff
        return GradedElement(terms, trunc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QI, Scalar)):
            return self * other
        return NotImplemented

    def _coerce(self, other) -> GradedElement:
        if isinstance(other, GradedElement):
            return other
        if isinstance(other, (int, Fraction, QI, Scalar)):
            return GradedElement.scalar(other, self.truncation)
        raise TypeError(f"cannot coerce {type(other).__name__} to GradedElement")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QI, Scalar)):
            other = GradedElement.scalar(other, self.truncation)
        if not isinstance(other, GradedElement):
            return NotImplemented
        return self.monomials == other.monomials

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self.monomials.items()))

    # -- output ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        parts = []
        for key in sorted(self.monomials, key=lambda k: (_key_degree(k), tuple(g.sort_key for g in k))):
            coeff = self.monomials[key]
            mono = "*".join(g.label() for g in key) if key else "1"
            parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


@dataclass(frozen=True)
class Derivation:
    """Graded derivation determined by its action on generators.

    Extends by the graded Leibniz rule
        D(x*y) = D(x)*y + (-1)^(deg D * deg x) * x * D(y).
    """

    name: str
    degree: int
    action: Mapping[Generator, GradedElement] = field(hash=False)

    def __call__(self, x: GradedElement) -> GradedElement:
        return apply_derivation(self, x)


def apply_derivation(D: Derivation, x: GradedElement) -> GradedElement:
    out = GradedElement.zero(x.truncation)
    d_odd = D.degree & 1
    for key, coeff in x.monomials.items():
        prefix_parity = 0
        for idx, gen in enumerate(key):
            try:
                image = D.action[gen]
            except KeyError:
                raise UnknownGeneratorError(
                    f"derivation {D.name} has no action on {gen.label()}"
                ) from None
            if not image.is_zero():
                sign = -1 if (d_odd and prefix_parity) else 1
                prefix = GradedElement({key[:idx]: coeff * sign}, x.truncation)
                suffix = GradedElement({key[idx + 1:]: Scalar.one()}, x.truncation)
                out = out + prefix * image * suffix
            prefix_parity ^= gen.degree & 1
    return out


def graded_commutator(D1: Derivation, D2: Derivation, probe: GradedElement) -> GradedElement:
    """[D1, D2] applied to probe: D1 D2 - (-1)^(deg D1 * deg D2) D2 D1.

    For two odd derivations this is the anticommutator.
    """
    first = apply_derivation(D1, apply_derivation(D2, probe))
    second = apply_derivation(D2, apply_derivation(D1, probe))
    if (D1.degree & 1) and (D2.degree & 1):
        return first + second
    return first - second


def substitute(images: Mapping[Generator, GradedElement], x: GradedElement) -> GradedElement:
    """Extend a degree-preserving generator assignment to an algebra map."""
    checked = set()
    out = GradedElement.zero(x.truncation)
    for key, coeff in x.monomials.items():
        term = GradedElement.scalar(coeff, x.truncation)
        for gen in key:
            try:
                image = images[gen]
            except KeyError:
                raise UnknownGeneratorError(
                    f"no substitution image for {gen.label()}"
                ) from None
            if gen not in checked:
                deg = image.homogeneous_degree()
                if deg is not None and deg != gen.degree:
                    raise DegreeMismatchError(
                        f"image of {gen.label()} has degree {deg}, expected {gen.degree}"
                    )
                checked.add(gen)
            term = term * image
            if term.is_zero():
                break
        out = out + term
    return out


def identity_images(gens, truncation=None):
    """Identity assignment on the given generators (substitution helper)."""
    return {g: GradedElement.generator(g, truncation) for g in gens}
