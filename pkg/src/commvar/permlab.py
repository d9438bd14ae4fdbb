"""Permutations, partial permutation matrices, orbit dimensions, Bruhat order."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation in one-line notation, ``pi(i) = one_line[i-1]``.

    Its matrix sends e_j to e_{pi(j)}: column ``j`` holds a 1 in row ``pi(j)``.
    """

    one_line: tuple[int, ...]

    def __post_init__(self):
        ol = tuple(int(x) for x in self.one_line)
        if sorted(ol) != list(range(1, len(ol) + 1)):
            raise ValueError(f"not a permutation: {ol}")
        object.__setattr__(self, "one_line", ol)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        text = text.strip()
        if "," in text:
            return cls(tuple(int(x) for x in text.split(",")))
        return cls(tuple(int(c) for c in text))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @property
    def n(self) -> int:
        return len(self.one_line)

    def __call__(self, i: int) -> int:
        return self.one_line[i - 1]

    def __str__(self):
        if self.n <= 9:
            return "".join(str(x) for x in self.one_line)
        return ",".join(str(x) for x in self.one_line)

    def __repr__(self):
        return f"Permutation({str(self)!r})"

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.one_line, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """``(self o other)(i) = self(other(i))``."""
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def length(self) -> int:
        ol = self.one_line
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n) if ol[i] > ol[j])

    def conjugate_by_w0(self) -> "Permutation":
        n = self.n
        return Permutation(tuple(n + 1 - self(n + 1 - i) for i in range(1, n + 1)))

    def matrix(self) -> list[list[int]]:
        n = self.n
        return [[1 if self(j) == i else 0 for j in range(1, n + 1)] for i in range(1, n + 1)]

    def cells(self) -> frozenset[tuple[int, int]]:
        """(row, column) positions of the 1s of the matrix."""
        return frozenset((self(j), j) for j in range(1, self.n + 1))

    def as_partial(self) -> "PartialPerm":
        return PartialPerm(self.n, self.cells())

    def is_identity(self) -> bool:
        return self.one_line == tuple(range(1, self.n + 1))


def parse_perm(text) -> Permutation:
    if isinstance(text, Permutation):
        return text
    return Permutation.parse(str(text))


def inverse(pi: Permutation) -> Permutation:
    return pi.inverse()


def length(pi: Permutation) -> int:
    return pi.length()


def conjugate_by_w0(pi: Permutation) -> Permutation:
    return pi.conjugate_by_w0()


def concat_star(pi: Permutation, rho: Permutation) -> Permutation:
    """Block direct sum: ``pi`` on the first k letters, ``rho`` shifted after."""
    k = pi.n
    return Permutation(pi.one_line + tuple(k + x for x in rho.one_line))


def star_splits(pi: Permutation) -> list[tuple[int, Permutation, Permutation]]:
    """All ways to write ``pi = left * right`` with 0 < k < n."""
    out = []
    n = pi.n
    for k in range(1, n):
        head = pi.one_line[:k]
        if set(head) == set(range(1, k + 1)):
            out.append((k, Permutation(head), Permutation(tuple(x - k for x in pi.one_line[k:]))))
    return out


def is_star_irreducible(pi: Permutation) -> bool:
    return not star_splits(pi)


@dataclass(frozen=True)
class PartialPerm:
    """n x n 0/1 matrix with at most one 1 per row and column, stored as its 1-cells."""

    n: int
    cells: frozenset[tuple[int, int]]

    def __post_init__(self):
        cells = frozenset((int(i), int(j)) for i, j in self.cells)
        rows = [i for i, _ in cells]
        cols = [j for _, j in cells]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("two 1s share a row or column")
        if any(not (1 <= i <= self.n and 1 <= j <= self.n) for i, j in cells):
            raise ValueError("cell outside the matrix")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def from_matrix(cls, rows) -> "PartialPerm":
        n = len(rows)
        return cls(n, frozenset((i + 1, j + 1) for i in range(n) for j in range(n) if rows[i][j]))

    @property
    def rank(self) -> int:
        return len(self.cells)

    def is_permutation(self) -> bool:
        return self.rank == self.n

    def to_permutation(self) -> Permutation:
        if not self.is_permutation():
            raise ValueError("partial permutation is not full rank")
        return Permutation(tuple(r for r, _ in sorted(self.cells, key=lambda rc: rc[1])))

    def matrix(self) -> list[list[int]]:
        return [[1 if (i, j) in self.cells else 0 for j in range(1, self.n + 1)]
                for i in range(1, self.n + 1)]

    def __str__(self):
        return "/".join("".join(str(x) for x in row) for row in self.matrix())


def orbit_dimension(p: PartialPerm) -> int:
    """dim of B+ p B+: entries with a 1 of ``p`` on them, directly below, or directly left."""
    count = 0
    for i in range(1, p.n + 1):
        for j in range(1, p.n + 1):
            if any((c == j and r >= i) or (r == i and c <= j) for r, c in p.cells):
                count += 1
    return count


def fiber_dimension(p: PartialPerm) -> int:
    """Free entries of Y with p.Y and Y.p upper triangular (no 1 strictly left or strictly below)."""
    count = 0
    for i in range(1, p.n + 1):
        for j in range(1, p.n + 1):
            if not any((c == j and r > i) or (r == i and c < j) for r, c in p.cells):
                count += 1
    return count


def stratum_dimension(p: PartialPerm, n: int | None = None) -> int:
    n = p.n if n is None else n
    return n * n + p.rank


def sw_rank(pi: Permutation | PartialPerm, i: int, j: int) -> int:
    """Number of 1s in the lower-left i x j rectangle (rows n-i+1..n, columns 1..j)."""
    cells = pi.cells() if isinstance(pi, Permutation) else pi.cells
    n = pi.n
    return sum(1 for r, c in cells if r > n - i and c <= j)


def sw_rank_matrix(pi: Permutation) -> list[list[int]]:
    n = pi.n
    return [[sw_rank(pi, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)]


def bruhat_leq(rho: Permutation, pi: Permutation) -> bool:
    """Bruhat order by southwest rank counts: rho <= pi iff r_ij(rho) <= r_ij(pi) everywhere.

    The identity has the smallest counts, w0 the largest.
    """
    if rho.n != pi.n:
        raise ValueError("permutations of different sizes")
    a, b = sw_rank_matrix(rho), sw_rank_matrix(pi)
    return all(x <= y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def bruhat_leq_tableau(rho: Permutation, pi: Permutation) -> bool:
    """Tableau criterion: sorted prefixes of rho are dominated by those of pi."""
    if rho.n != pi.n:
        raise ValueError("permutations of different sizes")
    for k in range(1, rho.n):
        a = sorted(rho.one_line[:k])
        b = sorted(pi.one_line[:k])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def bruhat_lower_interval(pi: Permutation) -> list[Permutation]:
    return [rho for rho in enumerate_permutations(pi.n) if bruhat_leq(rho, pi)]


def enumerate_permutations(n: int) -> list[Permutation]:
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def enumerate_partial_perms(n: int) -> list[PartialPerm]:
    """Lexicographic by (rank, row set, column images)."""
    if n > 6:
        raise ValueError("partial permutation enumeration limited to n <= 6")
    out = []
    for k in range(n + 1):
        for rows in itertools.combinations(range(1, n + 1), k):
            for cols in itertools.permutations(range(1, n + 1), k):
                out.append(PartialPerm(n, frozenset(zip(rows, cols))))
    return out


def count_partial_perms(n: int) -> int:
    return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


def enumerate_objects(kind: str, n: int) -> list:
    if kind == "permutations":
        return enumerate_permutations(n)
    if kind == "partial_perms":
        return enumerate_partial_perms(n)
    raise ValueError(f"unknown kind {kind!r}")


def table_order(pi: Permutation) -> tuple:
    """Sort key: by length, then descending one-line notation (123, 213, 132, 312, 231, 321)."""
    return (pi.length(), tuple(-x for x in pi.one_line))
