"""Square matrices over a graded coefficient ring (GradedElement or CartanElement).

Entries of the curvature matrices handled here are even, so they commute and
powers and traces are unambiguous.
"""

from __future__ import annotations

from .cartan import CartanElement
from .graded import GradedElement
from .scalars import Scalar


def ring_zero(entry):
    if isinstance(entry, CartanElement):
        return CartanElement.zero(entry.carrier, entry.truncation)
    if isinstance(entry, GradedElement):
        return GradedElement.zero(entry.truncation)
    raise TypeError(f"unsupported ring entry {type(entry).__name__}")


def ring_one(entry):
    if isinstance(entry, CartanElement):
        return CartanElement.from_graded(
            GradedElement.one(entry.truncation), entry.carrier, entry.truncation
        )
    if isinstance(entry, GradedElement):
        return GradedElement.one(entry.truncation)
    raise TypeError(f"unsupported ring entry {type(entry).__name__}")


class MatrixCurvature:
    """Square array of even graded/Cartan entries with powers and traces."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = [list(row) for row in entries]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if n == 0:
            raise ValueError("matrix must be non-empty")
        self.entries = rows

    @property
    def size(self) -> int:
        return len(self.entries)

    def _zero(self):
        return ring_zero(self.entries[0][0])

    def identity(self) -> MatrixCurvature:
        one = ring_one(self.entries[0][0])
        zero = self._zero()
        return MatrixCurvature(
            [[one if i == j else zero for j in range(self.size)] for i in range(self.size)]
        )

    def __add__(self, other) -> MatrixCurvature:
        return MatrixCurvature(
            [[a + b for a, b in zip(ra, rb)]
             for ra, rb in zip(self.entries, other.entries)]
        )

    def __matmul__(self, other) -> MatrixCurvature:
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self._zero()
                for k in range(n):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return MatrixCurvature(out)

    def scale(self, s) -> MatrixCurvature:
        return MatrixCurvature([[e * s for e in row] for row in self.entries])

    def power(self, m: int) -> MatrixCurvature:
        if m < 0:
            raise ValueError("negative matrix power")
        result = self.identity()
        for _ in range(m):
            result = result @ self
        return result

    def trace(self):
        acc = self._zero()
        for i in range(self.size):
            acc = acc + self.entries[i][i]
        return acc

    def is_antisymmetric(self) -> bool:
        n = self.size
        for i in range(n):
            for j in range(n):
                if not (self.entries[i][j] + self.entries[j][i]).is_zero():
                    return False
        return True

    @staticmethod
    def block_diag(a: MatrixCurvature, b: MatrixCurvature) -> MatrixCurvature:
        zero = ring_zero(a.entries[0][0])
        n, m = a.size, b.size
        out = [[zero for _ in range(n + m)] for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                out[i][j] = a.entries[i][j]
        for i in range(m):
            for j in range(m):
                out[n + i][n + j] = b.entries[i][j]
        return MatrixCurvature(out)


def rep_matrix(components, rep) -> MatrixCurvature:
    """Contract a list of ring-valued components with representation matrices.

    Returns sum_i components[i] * rep.matrices[i] as a MatrixCurvature.
    """
    dim_v = rep.dim_v
    zero = ring_zero(components[0])
    out = [[zero for _ in range(dim_v)] for _ in range(dim_v)]
    for i, comp in enumerate(components):
        mat = rep.matrices[i]
        for p in range(dim_v):
            for q in range(dim_v):
                entry = mat[p][q]
                if not entry.is_zero():
                    out[p][q] = out[p][q] + comp * Scalar.from_qi(entry)
    return MatrixCurvature(out)
