"""Small exact matrices over QQ."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence


class RationalMatrix:
    """Immutable m x k matrix of Fractions."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, k: int | None = None) -> "RationalMatrix":
        return cls([[0] * (m if k is None else k) for _ in range(m)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "RationalMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def n(self) -> int:
        m, k = self.shape
        if m != k:
            raise ValueError("not square")
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entry(self, i: int, j: int) -> Fraction:
        """1-based access."""
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, c) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        return RationalMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                               for r in self.rows])

    def __pow__(self, k: int) -> "RationalMatrix":
        out = RationalMatrix.identity(self.n)
        for _ in range(k):
            out = out @ self
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.rows)))

    def diag(self) -> tuple[Fraction, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def is_upper_triangular(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i > j)

    def is_lower_triangular(self) -> bool:
        return self.transpose().is_upper_triangular()

    def is_unipotent_upper(self) -> bool:
        return self.is_upper_triangular() and all(x == 1 for x in self.diag())

    def inverse(self) -> "RationalMatrix":
        """Gauss-Jordan inverse."""
        n = self.n
        a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                raise ZeroDivisionError("singular matrix")
            a[c], a[p] = a[p], a[c]
            inv = 1 / a[c][c]
            a[c] = [x * inv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c] != 0:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return RationalMatrix([r[n:] for r in a])

    def rank(self) -> int:
        return rank(self.rows)

    def flatten(self) -> list[Fraction]:
        return [x for r in self.rows for x in r]

    def tolist(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"RationalMatrix({self.tolist()})"


def commutator(X: RationalMatrix, Y: RationalMatrix) -> RationalMatrix:
    return X @ Y - Y @ X


def rank(rows: Sequence[Sequence]) -> int:
    """Rank by fraction-free (Bareiss) elimination on the integer-scaled rows."""
    mat = []
    for r in rows:
        r = [Fraction(x) for x in r]
        den = 1
        for x in r:
            den = lcm(den, x.denominator)
        mat.append([int(x * den) for x in r])
    if not mat:
        return 0
    m, k = len(mat), len(mat[0])
    prev = 1
    rk = 0
    for c in range(k):
        if rk == m:
            break
        p = next((r for r in range(rk, m) if mat[r][c] != 0), None)
        if p is None:
            continue
        mat[rk], mat[p] = mat[p], mat[rk]
        piv = mat[rk][c]
        for r in range(rk + 1, m):
            a = mat[r][c]
            row, top = mat[r], mat[rk]
            for cc in range(c + 1, k):
                row[cc] = (piv * row[cc] - a * top[cc]) // prev
            row[c] = 0
        prev = piv
        rk += 1
    return rk
