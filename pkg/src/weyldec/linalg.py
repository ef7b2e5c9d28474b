"""Dense exact linear algebra over the rationals.

Gaussian elimination with a size-aware pivot rule: among the nonzero
candidates in a column we pick the entry with the smallest combined bit
length, which keeps intermediate fractions from ballooning.  Everything
is exact; there is no tolerance anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = list[Fraction]


class Matrix:
    """Dense row-major matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        data = [[Fraction(x) for x in row] for row in entries]
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("rows have unequal lengths")
            if cols is not None and cols != width:
                raise ValueError("explicit column count disagrees with rows")
        else:
            if cols is None:
                raise ValueError("empty matrix needs an explicit column count")
            width = cols
        self.entries = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)])

    def mul_vec(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return [sum((r[j] * v[j] for j in range(self.cols)), Fraction(0)) for r in self.entries]

    def column(self, j: int) -> Vector:
        return [row[j] for row in self.entries]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __repr__(self) -> str:
        return f"Matrix({self.entries!r})"


def _pivot_size(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _rref(data: list[Vector], cols: int) -> list[int]:
    """In-place reduced row echelon form; returns the pivot column list."""
    pivots: list[int] = []
    pivot_row = 0
    for col in range(cols):
        best = None
        for r in range(pivot_row, len(data)):
            if data[r][col]:
                if best is None or _pivot_size(data[r][col]) < _pivot_size(data[best][col]):
                    best = r
        if best is None:
            continue
        data[pivot_row], data[best] = data[best], data[pivot_row]
        inv = Fraction(1) / data[pivot_row][col]
        data[pivot_row] = [x * inv for x in data[pivot_row]]
        for r in range(len(data)):
            if r != pivot_row and data[r][col]:
                factor = data[r][col]
                row, prow = data[r], data[pivot_row]
                data[r] = [a - factor * b for a, b in zip(row, prow)]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(data):
            break
    return pivots


def rank(a: Matrix) -> int:
    data = [list(row) for row in a.entries]
    return len(_rref(data, a.cols))


def solve(a: Matrix, b: Sequence[Fraction]) -> Vector | None:
    """One exact solution of a x = b with free variables set to 0.

    Returns None when the system is inconsistent; the caller decides
    whether that is an error.
    """
    if len(b) != a.rows:
        raise ValueError("right-hand side length does not match row count")
    data = [list(row) + [Fraction(bi)] for row, bi in zip(a.entries, b)]
    if not data:
        return [Fraction(0)] * a.cols
    pivots = _rref(data, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [Fraction(0)] * a.cols
    for r, col in enumerate(pivots):
        x[col] = data[r][a.cols]
    return x


def kernel(a: Matrix) -> list[Vector]:
    """Basis of the null space, each vector scaled so its first nonzero is 1."""
    data = [list(row) for row in a.entries]
    pivots = _rref(data, a.cols)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(a.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * a.cols
        v[free] = Fraction(1)
        for r, col in enumerate(pivots):
            v[col] = -data[r][free]
        lead = next(x for x in v if x)
        basis.append([x / lead for x in v])
    return basis
