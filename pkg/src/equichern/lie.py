"""Lie algebra data: structure constants, validation, exact matrix realizations.

Structure constants are stored as f[a][b][c] = coefficient of e_c in
[e_a, e_b], with exact Scalar entries so the Jacobi identity can be tested
with zero tolerance.  Matrix representations carry Gaussian-rational entries
for the same reason.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import QI, Scalar, as_scalar


@dataclass
class ValidationReport:
    subject: str
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject}: ok"
        lines = "\n  ".join(self.failures)
        return f"{self.subject}: FAILED\n  {lines}"


class LieAlgebraData:
    """Basis labels plus structure constants [e_a, e_b] = f[a][b][c] e_c."""

    def __init__(self, name, dim, f=None, basis_names=None):
        self.name = name
        self.dim = int(dim)
        if self.dim < 0:
            raise ValueError("dimension must be non-negative")
        self.basis_names = tuple(basis_names or (f"e{a+1}" for a in range(self.dim)))
        if f is None:
            f = [[[Scalar.zero() for _ in range(self.dim)] for _ in range(self.dim)]
                 for _ in range(self.dim)]
        self.f = tuple(
            tuple(tuple(as_scalar(f[a][b][c]) for c in range(self.dim))
                  for b in range(self.dim))
            for a in range(self.dim)
        )

    def structure(self, a, b, c) -> Scalar:
        """f^c_{ab}: coefficient of e_c in [e_a, e_b]."""
        return self.f[a][b][c]

    def bracket(self, v, w):
        """([v, w])^c = f^c_{ab} v^a w^b for coefficient vectors."""
        if len(v) != self.dim or len(w) != self.dim:
            raise ValueError(f"expected vectors of length {self.dim}")
        out = [Scalar.zero() for _ in range(self.dim)]
        for a in range(self.dim):
            va = as_scalar(v[a])
            if va.is_zero():
                continue
            for b in range(self.dim):
                wb = as_scalar(w[b])
                if wb.is_zero():
                    continue
                for c in range(self.dim):
                    fc = self.f[a][b][c]
                    if not fc.is_zero():
                        out[c] = out[c] + fc * va * wb
        return out

    def is_abelian(self) -> bool:
        return all(
            self.f[a][b][c].is_zero()
            for a in range(self.dim) for b in range(self.dim) for c in range(self.dim)
        )

    def __repr__(self):
        return f"LieAlgebraData({self.name}, dim={self.dim})"


def validate(g: LieAlgebraData) -> ValidationReport:
    """Check antisymmetry and the Jacobi identity exactly, listing violations."""
    report = ValidationReport(f"lie algebra {g.name}")
    n = g.dim
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if g.f[a][b][c] + g.f[b][a][c] != Scalar.zero():
                    report.failures.append(
                        f"antisymmetry fails at f^{c+1}_({a+1},{b+1})"
                    )
    # sum_c ( f^c_{ab} f^e_{cd} + f^c_{bd} f^e_{ca} + f^c_{da} f^e_{cb} ) = 0
    for a in range(n):
        for b in range(n):
            for d in range(n):
                for e in range(n):
                    total = Scalar.zero()
                    for c in range(n):
                        total = total + g.f[a][b][c] * g.f[c][d][e]
                        total = total + g.f[b][d][c] * g.f[c][a][e]
                        total = total + g.f[d][a][c] * g.f[c][b][e]
                    if not total.is_zero():
                        report.failures.append(
                            f"Jacobi fails on triple ({a+1},{b+1},{d+1}) in e{e+1}"
                        )
    return report


# ---------------------------------------------------------------------------
# Exact complex-rational matrices (tuples of tuples of QI)


def mat_zero(n):
    return tuple(tuple(QI() for _ in range(n)) for _ in range(n))


def mat_add(A, B):
    return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(A, B):
    return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(A, s):
    return tuple(tuple(a * s for a in row) for row in A)


def mat_mul(A, B):
    n = len(A)
    m = len(B[0])
    k = len(B)
    return tuple(
        tuple(sum((A[i][p] * B[p][j] for p in range(k)), QI()) for j in range(m))
        for i in range(n)
    )


def mat_commutator(A, B):
    return mat_sub(mat_mul(A, B), mat_mul(B, A))


def mat_is_zero(A) -> bool:
    return all(e.is_zero() for row in A for e in row)


@dataclass(frozen=True)
class MatrixRep:
    """One exact square matrix per basis element; [M_a, M_b] = f^c_{ab} M_c."""

    name: str
    dim_v: int
    matrices: tuple

    def matrix(self, a):
        return self.matrices[a]


def check_rep(g: LieAlgebraData, rep: MatrixRep) -> ValidationReport:
    """Accept iff the matrix commutators reproduce the structure constants."""
    report = ValidationReport(f"representation {rep.name} of {g.name}")
    if len(rep.matrices) != g.dim:
        report.failures.append(
            f"expected {g.dim} matrices, got {len(rep.matrices)}"
        )
        return report
    for a in range(g.dim):
        for b in range(g.dim):
            lhs = mat_commutator(rep.matrices[a], rep.matrices[b])
            rhs = mat_zero(rep.dim_v)
            for c in range(g.dim):
                fc = g.structure(a, b, c)
                if not fc.is_zero():
                    rhs = mat_add(rhs, mat_scale(rep.matrices[c], _scalar_to_qi(fc)))
            if not mat_is_zero(mat_sub(lhs, rhs)):
                report.failures.append(f"commutator mismatch on pair ({a+1},{b+1})")
    return report


def _scalar_to_qi(s: Scalar) -> QI:
    if s.is_zero():
        return QI()
    if set(s.terms) != {0}:
        raise ValueError(f"structure constant {s} carries tau powers")
    return s.terms[0]


# ---------------------------------------------------------------------------
# Built-in algebras and representations

_EPS = {
    (0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1,
    (1, 0, 2): -1, (2, 1, 0): -1, (0, 2, 1): -1,
}


def _epsilon_f(dim, offset=0):
    f = [[[Scalar.zero() for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]
    for (a, b, c), v in _EPS.items():
        f[a + offset][b + offset][c + offset] = Scalar.from_rational(v)
    return f


def abelian(n: int) -> LieAlgebraData:
    return LieAlgebraData(f"abelian({n})", n)


def u1() -> LieAlgebraData:
    return LieAlgebraData("u1", 1)


def su2() -> LieAlgebraData:
    return LieAlgebraData("su2", 3, _epsilon_f(3))


def so3() -> LieAlgebraData:
    return LieAlgebraData("so3", 3, _epsilon_f(3))


def u2() -> LieAlgebraData:
    # basis (center, su2 part); e_0 central, [e_a, e_b] = eps_abc e_c on 1..3
    return LieAlgebraData("u2", 4, _epsilon_f(4, offset=1))


def _q(p, q=1):
    return QI(Fraction(p, q))


def _qi(p, q=1):
    return QI(0, Fraction(p, q))


def su2_rep() -> MatrixRep:
    # M_a = -(i/2) * sigma_a, so [M_a, M_b] = eps_abc M_c exactly
    m1 = ((_q(0), _qi(-1, 2)), (_qi(-1, 2), _q(0)))
    m2 = ((_q(0), _q(-1, 2)), (_q(1, 2), _q(0)))
    m3 = ((_qi(-1, 2), _q(0)), (_q(0), _qi(1, 2)))
    return MatrixRep("su2 defining", 2, (m1, m2, m3))


def so3_rep() -> MatrixRep:
    # (L_a)_{bc} = -eps_{abc}
    mats = []
    for a in range(3):
        rows = [[QI() for _ in range(3)] for _ in range(3)]
        for (x, y, z), v in _EPS.items():
            if x == a:
                rows[y][z] = _q(-v)
        mats.append(tuple(tuple(r) for r in rows))
    return MatrixRep("so3 vector", 3, tuple(mats))


def u1_rep() -> MatrixRep:
    return MatrixRep("u1 defining", 1, (((_qi(1),),),))


def u2_rep() -> MatrixRep:
    center = ((_qi(1, 2), _q(0)), (_q(0), _qi(1, 2)))
    return MatrixRep("u2 defining", 2, (center,) + su2_rep().matrices)


def abelian_rep(n: int) -> MatrixRep:
    mats = []
    for a in range(n):
        rows = [[QI() for _ in range(n)] for _ in range(n)]
        rows[a][a] = _qi(1)
        mats.append(tuple(tuple(r) for r in rows))
    return MatrixRep(f"abelian({n}) diagonal", n, tuple(mats))


def builtin_algebra(name: str) -> LieAlgebraData:
    """Resolve a scenario algebra name: u1, u2, su2, so3, abelian(n)."""
    key = name.strip().lower()
    table = {"u1": u1, "u2": u2, "su2": su2, "so3": so3}
    if key in table:
        return table[key]()
    if key.startswith("abelian(") and key.endswith(")"):
        return abelian(int(key[8:-1]))
    raise KeyError(f"unknown algebra name: {name}")


def builtin_rep(name: str):
    key = name.strip().lower()
    table = {"u1": u1_rep, "u2": u2_rep, "su2": su2_rep, "so3": so3_rep}
    if key in table:
        return table[key]()
    if key.startswith("abelian(") and key.endswith(")"):
        return abelian_rep(int(key[8:-1]))
    return None
