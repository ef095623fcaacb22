"""Characteristic form series: Chern character and the A-roof genus.

All series coefficients are computed at build time by exact power-series
arithmetic over Fractions (division, log, exp), never hard-coded.  The
curvature variable convention:

  * Chern character:  ch(F) = sum_k tr((F/2pi i * i^2 ...)) -- concretely
    tr exp(i F / 2pi) = sum_k (1/k!) tr((-tau^-1 F)^k).
  * A-roof: log Ahat(R) = (1/2) sum_k b_{2k} tr(X^{2k}) with X = R/(2pi i)
    and b_{2k} the Taylor coefficients of log((u/2)/sinh(u/2)).  For a real
    antisymmetric block with entry x this reproduces 1 - (1/24)(x/2pi)^2 + ...
    i.e. the expansion in Pontryagin roots.  The alternate convention scales
    the variable to R/(4pi i); the choice is reported with all outputs.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cartan import CartanElement
from .graded import GradedElement
from .ringmat import MatrixCurvature, ring_one
from .scalars import Scalar

# ---------------------------------------------------------------------------
# Exact univariate power series (dense lists of Fractions, index = power)


def ps_trim(a, top):
    out = list(a[: top + 1])
    out += [Fraction(0)] * (top + 1 - len(out))
    return out


def ps_mul(a, b, top):
    out = [Fraction(0)] * (top + 1)
    for i, ai in enumerate(a[: top + 1]):
        if ai == 0:
            continue
        for j, bj in enumerate(b[: top + 1 - i]):
            if bj:
                out[i + j] += ai * bj
    return out


def ps_div(a, b, top):
    """a/b with b[0] != 0."""
    if b[0] == 0:
        raise ZeroDivisionError("power series division needs an invertible constant term")
    a = ps_trim(a, top)
    b = ps_trim(b, top)
    out = [Fraction(0)] * (top + 1)
    for n in range(top + 1):
        acc = a[n]
        for k in range(1, n + 1):
            acc -= b[k] * out[n - k]
        out[n] = acc / b[0]
    return out


def ps_log(a, top):
    """log(a) with a[0] == 1, via l' = a'/a."""
    if a[0] != 1:
        raise ValueError("log requires constant term 1")
    a = ps_trim(a, top)
    out = [Fraction(0)] * (top + 1)
    for n in range(1, top + 1):
        acc = n * a[n]
        for k in range(1, n):
            acc -= k * out[k] * a[n - k]
        out[n] = acc / n
    return out


def ps_exp(a, top):
    """exp(a) with a[0] == 0, via e' = e a'."""
    if a[0] != 0:
        raise ValueError("exp requires constant term 0")
    a = ps_trim(a, top)
    out = [Fraction(0)] * (top + 1)
    out[0] = Fraction(1)
    for n in range(1, top + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += k * a[k] * out[n - k]
        out[n] = acc / n
    return out


def sinh_ratio_log_coefficients(top: int) -> dict[int, Fraction]:
    """b_{2k}: Taylor coefficients of log((u/2)/sinh(u/2)) up to u^top.

    sinh(u/2)/(u/2) = sum_m (u/2)^{2m} / (2m+1)!, then negate its log.
    """
    s = [Fraction(0)] * (top + 1)
    for m in range(0, top // 2 + 1):
        s[2 * m] = Fraction(1, 4**m * math.factorial(2 * m + 1))
    log_s = ps_log(s, top)
    return {n: -c for n, c in enumerate(log_s) if c != 0}


def bernoulli_numbers(n_max: int) -> list[Fraction]:
    """B_0..B_n via the defining recurrence sum_j C(m+1, j) B_j = 0."""
    B = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * B[j]
        B.append(-acc / (m + 1))
    return B


# ---------------------------------------------------------------------------
# Series objects


class CharSeries:
    """A named characteristic series with exact log-coefficients.

    `log_coefficients[n]` is the u^n coefficient of the logarithm of the
    defining scalar function (u for ch, log((u/2)/sinh(u/2)) for a_hat).
    """

    def __init__(self, name, log_coefficients, normalization=None):
        self.name = name
        self.log_coefficients = dict(log_coefficients)
        self.normalization = normalization

    @classmethod
    def chern(cls) -> CharSeries:
        return cls("ch", {1: Fraction(1)})

    @classmethod
    def a_hat(cls, top_degree: int = 12, normalization: str = "2pi") -> CharSeries:
        if normalization not in ("2pi", "4pi"):
            raise ValueError("normalization must be '2pi' or '4pi'")
        return cls("a_hat", sinh_ratio_log_coefficients(top_degree), normalization)

    def generating_coefficients(self, top: int) -> list[Fraction]:
        """exp of the log-series: the defining scalar function itself."""
        log = [Fraction(0)] * (top + 1)
        for n, c in self.log_coefficients.items():
            if n <= top:
                log[n] = c
        return ps_exp(log, top)

    def curvature_scale(self) -> Scalar:
        """Exact factor applied to curvature entries before substitution."""
        if self.name == "ch":
            return Scalar.tau(-1, -1)  # i/2pi
        scale = Scalar.tau(-1)  # 1/(2pi i)
        if self.normalization == "4pi":
            scale = scale * Fraction(1, 2)
        return scale

    def apply(self, F: MatrixCurvature, top_degree: int):
        """Substitute a curvature matrix into the series, truncated."""
        if self.name == "ch":
            return _exponential_trace(F, self.curvature_scale(), top_degree)
        return _a_hat_apply(F, self, top_degree)

    def __repr__(self):
        return f"CharSeries({self.name})"


def _exponential_trace(F: MatrixCurvature, scale: Scalar, top_degree: int):
    """sum_k (1/k!) tr((scale * F)^k), entries homogeneous of total degree 2."""
    for row in F.entries:
        for e in row:
            if any(d != 2 for d in _entry_degrees(e)):
                raise ValueError(
                    f"curvature entries must be homogeneous of degree 2, got degrees {_entry_degrees(e)}"
                )
    scaled = F.scale(scale)
    out = ring_one(F.entries[0][0]) * Scalar.from_rational(F.size)
    power = scaled.identity()
    for k in range(1, top_degree // 2 + 1):
        power = power @ scaled
        term = power.trace()
        if term.is_zero():
            break
        out = out + term * Scalar.from_rational(1, math.factorial(k))
    return _truncate_total(out, top_degree)


def _a_hat_apply(F: MatrixCurvature, series: CharSeries, top_degree: int):
    if not F.is_antisymmetric():
        raise ValueError("a_hat requires an antisymmetric curvature matrix")
    scaled = F.scale(series.curvature_scale())
    half = Scalar.from_rational(1, 2)
    log_term = ring_one(F.entries[0][0]) * Scalar.zero()
    power = scaled.identity()
    for n in range(1, top_degree // 2 + 1):
        power = power @ scaled
        coeff = series.log_coefficients.get(n)
        if coeff:
            log_term = log_term + power.trace() * (Scalar.from_rational(coeff) * half)
    # exp of the (nilpotent above the truncation) log term
    out = ring_one(F.entries[0][0])
    term = ring_one(F.entries[0][0])
    k = 1
    while True:
        term = _truncate_total(term * log_term, top_degree) * Scalar.from_rational(1, k)
        if term.is_zero():
            break
        out = out + term
        k += 1
    return _truncate_total(out, top_degree)


def _entry_degrees(e):
    if isinstance(e, CartanElement):
        return e.total_degrees()
    return e.degrees()


def _truncate_total(x, top_degree: int):
    if isinstance(x, CartanElement):
        terms = {}
        for key, coeff in x.terms.items():
            kept = coeff.truncate(top_degree - 2 * len(key))
            if not kept.is_zero():
                terms[key] = kept
        return CartanElement(terms, x.carrier, x.truncation)
    return x.truncate(top_degree)


# ---------------------------------------------------------------------------
# Public operations


def chern_character(F: MatrixCurvature, v=None, top_degree: int = 8):
    """tr exp(i F~ / 2pi) truncated, with F~ = F or the one-parameter
    equivariant extension F - chi * v when a degree-0 matrix v is given."""
    if v is not None:
        F = equivariant_extension(F, v)
    return CharSeries.chern().apply(F, top_degree)


def a_hat(R: MatrixCurvature, top_degree: int = 8, normalization: str = "2pi"):
    """A-roof form of an antisymmetric curvature matrix, truncated."""
    return CharSeries.a_hat(top_degree, normalization).apply(R, top_degree)


def equivariant_substitute(series: CharSeries, Omega_G: MatrixCurvature,
                           top_total_degree: int):
    """Apply a characteristic series to a Cartan-valued curvature matrix.

    The chi symbols count as degree 2 in the truncation; the result is
    Cartan-closed (checked downstream).
    """
    entry = Omega_G.entries[0][0]
    if isinstance(entry, CartanElement) and entry.truncation is not None:
        if entry.truncation < top_total_degree:
            raise ValueError(
                f"carrier truncation {entry.truncation} below requested degree {top_total_degree}"
            )
    return series.apply(Omega_G, top_total_degree)


def equivariant_extension(F: MatrixCurvature, v) -> MatrixCurvature:
    """Cartan-valued matrix F - chi * v for a single equivariant direction.

    F must have CartanElement entries over a carrier with dim_g >= 1; a plain
    GradedElement matrix is first lifted with the supplied carrier of v, which
    must then be a (carrier, matrix) pair.
    """
    entries = F.entries
    sample = entries[0][0]
    if not isinstance(sample, CartanElement):
        raise TypeError("lift F to CartanElement entries before extending")
    carrier = sample.carrier
    n = F.size
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            vij = v[i][j]
            shift = CartanElement(
                {(0,): GradedElement.scalar(vij, sample.truncation)}, carrier,
                sample.truncation,
            )
            row.append(entries[i][j] - shift)
        out.append(row)
    return MatrixCurvature(out)


def lift_matrix(F: MatrixCurvature, carrier) -> MatrixCurvature:
    """Lift GradedElement entries to chi-free CartanElements."""
    return MatrixCurvature(
        [[CartanElement.from_graded(e, carrier) for e in row] for row in F.entries]
    )
