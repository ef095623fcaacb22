"""Exact coefficient ring: Gaussian rationals times integer powers of tau = 2*pi*i.

Every prefactor appearing in the characteristic-form and anomaly formulas is a
rational multiple of a power of i and a power of 2*pi, so the ring
Q(i)[tau, tau^-1] with tau standing for 2*pi*i holds all of them exactly.
Useful identities, with tau = 2*pi*i:

    i/2pi   = -tau^-1
    1/2pi   =  i*tau^-1
    2pi     = -i*tau
"""

from __future__ import annotations

import cmath
from fractions import Fraction

TAU_NUMERIC = complex(0.0, 2.0 * cmath.pi)  # 2*pi*i


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class QI:
    """Gaussian rational re + im*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def conjugate(self) -> QI:
        return QI(self.re, -self.im)

    def __add__(self, other) -> QI:
        other = _as_qi(other)
        return QI(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> QI:
        other = _as_qi(other)
        return QI(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> QI:
        return _as_qi(other) - self

    def __neg__(self) -> QI:
        return QI(-self.re, -self.im)

    def __mul__(self, other) -> QI:
        other = _as_qi(other)
        return QI(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> QI:
        other = _as_qi(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        c = other.conjugate()
        num = self * c
        return QI(num.re / n, num.im / n)

    def __eq__(self, other) -> bool:
        try:
            other = _as_qi(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def evaluate(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"

    __repr__ = __str__


QI_ONE = QI(1)
QI_I = QI(0, 1)


def _as_qi(x) -> QI:
    if isinstance(x, QI):
        return x
    if isinstance(x, (int, Fraction)):
        return QI(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to QI")


class Scalar:
    """Exact element of QI[tau, tau^-1]; tau is the formal symbol for 2*pi*i.

    Stored as a map tau-exponent -> nonzero QI coefficient.  Addition and
    multiplication are exact; `evaluate` substitutes the complex value.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for k, v in terms.items():
                v = _as_qi(v)
                if not v.is_zero():
                    cleaned[int(k)] = v
        self.terms = cleaned

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> Scalar:
        return cls()

    @classmethod
    def one(cls) -> Scalar:
        return cls({0: QI_ONE})

    @classmethod
    def from_rational(cls, p, q=1) -> Scalar:
        return cls({0: QI(Fraction(p, q))})

    @classmethod
    def from_qi(cls, z: QI) -> Scalar:
        return cls({0: z})

    @classmethod
    def i_unit(cls) -> Scalar:
        return cls({0: QI_I})

    @classmethod
    def tau(cls, power=1, coeff=1) -> Scalar:
        return cls({power: _as_qi(coeff)})

    # -- ring operations ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other) -> Scalar:
        other = as_scalar(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, QI()) + v
        return Scalar(terms)

    __radd__ = __add__

    def __sub__(self, other) -> Scalar:
        return self + (-as_scalar(other))

    def __rsub__(self, other) -> Scalar:
        return as_scalar(other) + (-self)

    def __neg__(self) -> Scalar:
        return Scalar({k: -v for k, v in self.terms.items()})

    def __mul__(self, other) -> Scalar:
        other = as_scalar(other)
        terms = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = k1 + k2
                terms[k] = terms.get(k, QI()) + v1 * v2
        return Scalar(terms)

    __rmul__ = __mul__

    def __truediv__(self, other) -> Scalar:
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_rational(other)
        elif isinstance(other, QI):
            other = Scalar.from_qi(other)
        if not isinstance(other, Scalar):
            raise TypeError(f"cannot divide Scalar by {type(other).__name__}")
        if other.is_zero():
            raise ZeroDivisionError("division by zero Scalar")
        if len(other.terms) != 1:
            raise ValueError("can only divide by a single-term Scalar")
        (k, v), = other.terms.items()
        return Scalar({j - k: w / v for j, w in self.terms.items()})

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int) or n < 0:
            raise ValueError("Scalar powers must be non-negative integers")
        out = Scalar.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- output --------------------------------------------------------

    def evaluate(self) -> complex:
        return sum(
            (v.evaluate() * TAU_NUMERIC**k for k, v in self.terms.items()),
            start=0j,
        )

    def rational_part(self) -> Fraction:
        """The tau^0 coefficient, which must be purely real."""
        v = self.terms.get(0, QI())
        if len(self.terms) > (0 if v.is_zero() else 1) or v.im != 0:
            raise ValueError(f"{self} is not a plain rational")
        return v.re

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = str(self.terms[k])
            if k == 0:
                parts.append(c)
            else:
                parts.append(f"{c}*tau^{k}")
        return " + ".join(parts)

    __repr__ = __str__


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.from_rational(x)
    if isinstance(x, QI):
        return Scalar.from_qi(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")


# i/2pi as a Scalar: the curvature rescaling of the Chern character.
I_OVER_2PI = Scalar.tau(-1, -1)
# 1/2pi = i * tau^-1.
ONE_OVER_2PI = Scalar.tau(-1, QI_I)
