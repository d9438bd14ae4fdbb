"""Ideals of the commuting-type schemes, sample points, and pointwise checks.

Conventions used throughout:

* the permutation matrix of ``pi`` sends e_j to e_{pi(j)}, so the diagonal
  identity on E_pi reads (XY)_{pi(i),pi(i)} = (YX)_ii;
* "lower-left i x j rectangle" means rows n-i+1..n, columns 1..j;
* the degeneration weight is w(X_ij) = i-1, w(Y_ij) = -(j-1), and initial
  forms are the minimal-weight parts, so the limit of D is
  {XY lower triangular, YX upper triangular}.  ``orientation="flipped"``
  negates the weight and gives the w0-conjugate instead.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groebner import IdealSpec
from .linalg import RationalMatrix, commutator, rank
from .permlab import Permutation, parse_perm, sw_rank
from .polyring import Polynomial, WeightVector, matrix_ring


class SymbolicMatrix:
    """n x n matrix of polynomials (0-based storage, 1-based ``entry``)."""

    __slots__ = ("n", "entries")

    def __init__(self, entries: Sequence[Sequence[Polynomial]]):
        self.entries = tuple(tuple(r) for r in entries)
        self.n = len(self.entries)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i - 1][j - 1]

    @property
    def ring(self):
        return self.entries[0][0].ring

    def __matmul__(self, other: "SymbolicMatrix") -> "SymbolicMatrix":
        n = self.n
        zero = self.ring.zero()
        return SymbolicMatrix([
            [sum((self.entries[i][k] * other.entries[k][j] for k in range(n)), zero)
             for j in range(n)]
            for i in range(n)
        ])

    def __sub__(self, other: "SymbolicMatrix") -> "SymbolicMatrix":
        return SymbolicMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def transpose(self) -> "SymbolicMatrix":
        return SymbolicMatrix(list(zip(*self.entries)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> list[list[Polynomial]]:
        """1-based row and column lists."""
        return [[self.entries[r - 1][c - 1] for c in cols] for r in rows]


def commutator_symbolic(X: SymbolicMatrix, Y: SymbolicMatrix) -> SymbolicMatrix:
    return X @ Y - Y @ X


def generic_matrices(n: int) -> tuple[SymbolicMatrix, SymbolicMatrix]:
    R = matrix_ring(n)
    g = R.gens()
    X = SymbolicMatrix([[g[i * n + j] for j in range(n)] for i in range(n)])
    Y = SymbolicMatrix([[g[n * n + i * n + j] for j in range(n)] for i in range(n)])
    return X, Y


def x_index(n: int, i: int, j: int) -> int:
    return (i - 1) * n + (j - 1)


def y_index(n: int, i: int, j: int) -> int:
    return n * n + (i - 1) * n + (j - 1)


def determinant(rows: list[list[Polynomial]]) -> Polynomial:
    """Laplace expansion along the first row (small minors only)."""
    k = len(rows)
    if k == 1:
        return rows[0][0]
    total = rows[0][0].ring.zero()
    for c in range(k):
        entry = rows[0][c]
        if entry.is_zero():
            continue
        minor = [r[:c] + r[c + 1:] for r in rows[1:]]
        term = entry * determinant(minor)
        total = total + term if c % 2 == 0 else total - term
    return total


# ---------------------------------------------------------------------------
# scheme tags


KINDS = ("commuting", "D", "Dz", "D0", "E", "Epi", "closure")


@dataclass(frozen=True)
class SchemeTag:
    kind: str
    pi: Permutation | None = None
    z: Fraction | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        if self.kind in ("Epi", "closure") and self.pi is None:
            raise ValueError(f"{self.kind} needs a permutation")
        if self.kind == "Dz":
            if self.z is None:
                raise ValueError("Dz needs a parameter z")
            object.__setattr__(self, "z", Fraction(self.z))
        if self.pi is not None:
            object.__setattr__(self, "pi", parse_perm(self.pi))

    def key(self, n: int) -> str:
        s = f"{self.kind}:n={n}"
        if self.pi is not None:
            s += f":pi={self.pi}"
        if self.z is not None:
            s += f":z={self.z}"
        return s

    @classmethod
    def parse(cls, text: str) -> tuple["SchemeTag", int | None]:
        """Inverse of :meth:`key`; the ``n=`` field may be omitted."""
        parts = text.split(":")
        fields = dict(p.split("=", 1) for p in parts[1:])
        tag = cls(parts[0], pi=fields.get("pi"), z=Fraction(fields["z"]) if "z" in fields else None)
        return tag, (int(fields["n"]) if "n" in fields else None)


def _check_pi(pi, n: int) -> Permutation:
    pi = parse_perm(pi)
    if pi.n != n:
        raise ValueError(f"permutation {pi} is not in S_{n}")
    return pi


def e_generators(n: int) -> list[Polynomial]:
    """Strict-lower entries of XY, then of YX (row-major)."""
    X, Y = generic_matrices(n)
    XY, YX = X @ Y, Y @ X
    lower = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i > j]
    return [XY.entry(i, j) for i, j in lower] + [YX.entry(i, j) for i, j in lower]


def diag_constraints(n: int, pi: Permutation, use_inverse: bool = False) -> list[Polynomial]:
    """(XY)_ii - (YX)_{q(i),q(i)} for i = 1..n with q = pi^-1, i.e. diag(XY) = pi . diag(YX).

    ``use_inverse`` takes q = pi instead.
    """
    X, Y = generic_matrices(n)
    XY, YX = X @ Y, Y @ X
    q = pi if use_inverse else pi.inverse()
    return [XY.entry(i, i) - YX.entry(q(i), q(i)) for i in range(1, n + 1)]


def _normalized_key(p: Polynomial):
    return p.content_normalized()


def schubert_rank_minors(M: SymbolicMatrix, pi: Permutation) -> list[Polynomial]:
    """All (r+1)-minors of each lower-left i x j rectangle whose 1-count r is below min(i, j)."""
    n = M.n
    pi = _check_pi(pi, n)
    seen = set()
    out = []
    for i in range(1, n + 1):
        rows_all = list(range(n - i + 1, n + 1))
        for j in range(1, n + 1):
            r = sw_rank(pi, i, j)
            if r >= min(i, j):
                continue
            for rows in itertools.combinations(rows_all, r + 1):
                for cols in itertools.combinations(range(1, j + 1), r + 1):
                    d = determinant(M.submatrix(rows, cols))
                    if d.is_zero():
                        continue
                    key = _normalized_key(d)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(d)
    return out


def build_ideal(tag: SchemeTag | str, n: int | None = None, orientation: str = "standard") -> IdealSpec:
    if isinstance(tag, str):
        tag, parsed_n = SchemeTag.parse(tag)
        if parsed_n is not None:
            if n is not None and n != parsed_n:
                raise ValueError(f"tag says n={parsed_n} but n={n} was given")
            n = parsed_n
    if n is None or n < 1:
        raise ValueError("matrix size must be at least 1")
    X, Y = generic_matrices(n)
    XY, YX = X @ Y, Y @ X
    idx = range(1, n + 1)
    kind = tag.kind
    if kind == "commuting":
        gens = [XY.entry(i, j) - YX.entry(i, j) for i in idx for j in idx]
    elif kind == "D":
        gens = [XY.entry(i, j) - YX.entry(i, j) for i in idx for j in idx if i != j]
    elif kind == "Dz":
        gens = dz_generators(n, tag.z, orientation)
    elif kind == "D0":
        gens = d0_generators(n, orientation)
    elif kind == "E":
        gens = e_generators(n)
    elif kind == "Epi":
        pi = _check_pi(tag.pi, n)
        gens = e_generators(n) + diag_constraints(n, pi)
        gens += schubert_rank_minors(X, pi) + schubert_rank_minors(Y, pi.inverse())
    elif kind == "closure":
        pi = _check_pi(tag.pi, n)
        gens = e_generators(n) + schubert_rank_minors(X, pi) + schubert_rank_minors(Y, pi.inverse())
    else:  # pragma: no cover
        raise ValueError(kind)
    gens = [g for g in gens if not g.is_zero()]
    return IdealSpec(tuple(gens), tag.key(n), matrix_ring(n))


def dz_generators(n: int, z, orientation: str = "standard") -> list[Polynomial]:
    """Off-diagonal entries of XY = rho(z)^{-1} (YX) rho(z) (standard orientation).

    Entry (i, j) reads (XY)_ij = z^(j-i) (YX)_ij; for i > j the equation is
    multiplied through by z^(i-j).  ``flipped`` uses z^(i-j) instead.
    """
    z = Fraction(z)
    if z == 0:
        return d0_generators(n, orientation)
    X, Y = generic_matrices(n)
    XY, YX = X @ Y, Y @ X
    sign = 1 if orientation == "standard" else -1
    gens = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            e = sign * (j - i)
            if e >= 0:
                gens.append(XY.entry(i, j) - YX.entry(i, j) * z**e)
            else:
                gens.append(XY.entry(i, j) * z**(-e) - YX.entry(i, j))
    return gens


def d0_generators(n: int, orientation: str = "standard") -> list[Polynomial]:
    """Strict-upper entries of XY and strict-lower entries of YX (standard orientation)."""
    X, Y = generic_matrices(n)
    XY, YX = X @ Y, Y @ X
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    if orientation == "standard":
        return [XY.entry(i, j) for i, j in pairs if i < j] + [YX.entry(i, j) for i, j in pairs if i > j]
    if orientation == "flipped":
        return [XY.entry(i, j) for i, j in pairs if i > j] + [YX.entry(i, j) for i, j in pairs if i < j]
    raise ValueError(f"unknown orientation {orientation!r}")


def degeneration_weight(n: int, orientation: str = "standard") -> WeightVector:
    """w(X_ij) = i-1, w(Y_ij) = -(j-1); negated for the flipped orientation."""
    w = [i for i in range(n) for _ in range(n)] + [-j for _ in range(n) for j in range(n)]
    if orientation == "flipped":
        w = [-x for x in w]
    elif orientation != "standard":
        raise ValueError(f"unknown orientation {orientation!r}")
    return WeightVector(tuple(w))


def tau_permutation(n: int) -> list[int]:
    """Variable relabelling X_ij -> X_{n+1-i, j}, Y_ij -> Y_{i, n+1-j}."""
    perm = [0] * (2 * n * n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            perm[x_index(n, i, j)] = x_index(n, n + 1 - i, j)
            perm[y_index(n, i, j)] = y_index(n, i, n + 1 - j)
    return perm


def tau_substitute(I: IdealSpec, n: int) -> IdealSpec:
    perm = tau_permutation(n)
    return IdealSpec(tuple(g.substitute_vars(perm) for g in I.generators), f"tau({I.label})", I.ring)


def tau_point(X: RationalMatrix, Y: RationalMatrix) -> tuple[RationalMatrix, RationalMatrix]:
    """(X, Y) -> (w0 X, Y w0); an involution exchanging D0 and E."""
    n = X.n
    w0 = RationalMatrix([[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)])
    return w0 @ X, Y @ w0


def same_generators_up_to_sign(a: Sequence[Polynomial], b: Sequence[Polynomial]) -> bool:
    na = {p.content_normalized() for p in a}
    nb = {p.content_normalized() for p in b}
    return na == nb


# ---------------------------------------------------------------------------
# sample points


def permutation_matrix(pi: Permutation) -> RationalMatrix:
    return RationalMatrix(pi.matrix())


@dataclass(frozen=True)
class SamplePointParams:
    pi: Permutation
    t: tuple[Fraction, ...]
    s: tuple[Fraction, ...]
    U1: RationalMatrix | None = None
    U2: RationalMatrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "pi", parse_perm(self.pi))
        object.__setattr__(self, "t", tuple(Fraction(x) for x in self.t))
        object.__setattr__(self, "s", tuple(Fraction(x) for x in self.s))
        n = self.pi.n
        if len(self.t) != n or len(self.s) != n:
            raise ValueError("t and s need n entries")
        for U in (self.U1, self.U2):
            if U is not None and (U.n != n or not U.is_unipotent_upper()):
                raise ValueError("U1 and U2 must be upper unipotent")

    def is_generic(self) -> bool:
        """s, t invertible; t_i/s_i pairwise distinct; s_j t_j pairwise distinct."""
        if any(x == 0 for x in self.s) or any(x == 0 for x in self.t):
            return False
        ratios = [a / b for a, b in zip(self.t, self.s)]
        prods = [a * b for a, b in zip(self.t, self.s)]
        return len(set(ratios)) == len(ratios) and len(set(prods)) == len(prods)


def sample_point(params: SamplePointParams) -> tuple[RationalMatrix, RationalMatrix]:
    """X = U1 P t U2^-1, Y = U2 s P^-1 U1^-1."""
    n = params.pi.n
    P = permutation_matrix(params.pi)
    Pinv = P.transpose()
    t = RationalMatrix.diagonal(params.t)
    s = RationalMatrix.diagonal(params.s)
    U1 = params.U1 or RationalMatrix.identity(n)
    U2 = params.U2 or RationalMatrix.identity(n)
    X = U1 @ P @ t @ U2.inverse()
    Y = U2 @ s @ Pinv @ U1.inverse()
    return X, Y


def central_point(pi, t, s) -> tuple[RationalMatrix, RationalMatrix]:
    return sample_point(SamplePointParams(parse_perm(pi), tuple(t), tuple(s)))


def random_unipotent(n: int, rng: random.Random, lo: int = -20, hi: int = 20) -> RationalMatrix:
    return RationalMatrix([[1 if i == j else (rng.randint(lo, hi) if j > i else 0) for j in range(n)]
                           for i in range(n)])


def random_params(pi: Permutation, rng: random.Random, unipotent: bool = True,
                  lo: int = -20, hi: int = 20, max_draws: int = 1000) -> SamplePointParams:
    """Draw integer t, s (and U1, U2) until the genericity predicate holds."""
    n = pi.n
    for _ in range(max_draws):
        t = tuple(rng.randint(lo, hi) for _ in range(n))
        s = tuple(rng.randint(lo, hi) for _ in range(n))
        U1 = random_unipotent(n, rng, lo, hi) if unipotent else None
        U2 = random_unipotent(n, rng, lo, hi) if unipotent else None
        params = SamplePointParams(pi, t, s, U1, U2)
        if params.is_generic():
            return params
    raise RuntimeError(f"no generic parameters after {max_draws} draws")


def point_values(X: RationalMatrix, Y: RationalMatrix) -> list[Fraction]:
    """Coordinates in the matrix-ring variable order."""
    return X.flatten() + Y.flatten()


def vanishes_at(I: IdealSpec, X: RationalMatrix, Y: RationalMatrix) -> bool:
    vals = point_values(X, Y)
    return all(g.evaluate(vals) == 0 for g in I.generators)


def jacobian_matrix(I: IdealSpec, X: RationalMatrix, Y: RationalMatrix) -> list[list[Fraction]]:
    vals = point_values(X, Y)
    N = I.ring.nvars
    return [[g.diff(v).evaluate(vals) for v in range(N)] for g in I.generators]


def jacobian_rank(I: IdealSpec, point: tuple[RationalMatrix, RationalMatrix]) -> int:
    X, Y = point
    if not vanishes_at(I, X, Y):
        raise ValueError(f"point does not lie on {I.label}")
    return rank(jacobian_matrix(I, X, Y))


# ---------------------------------------------------------------------------
# pointwise identities


def power_diagonal_matrix(X: RationalMatrix, Y: RationalMatrix) -> RationalMatrix:
    """n x 2n matrix: columns diag(X^0..X^{n-1}) then diag(Y^0..Y^{n-1})."""
    if X.shape != Y.shape or X.shape[0] != X.shape[1]:
        raise ValueError("need square matrices of equal size")
    n = X.n
    cols = []
    for M in (X, Y):
        P = RationalMatrix.identity(n)
        for _ in range(n):
            cols.append(P.diag())
            P = P @ M
    return RationalMatrix(list(zip(*cols)))


@dataclass(frozen=True)
class TaoReport:
    applies: bool
    rank: int
    passed: bool

    def as_dict(self):
        return {"applies": self.applies, "rank": self.rank, "pass": self.passed}


def tao_rank_check(X: RationalMatrix, Y: RationalMatrix) -> TaoReport:
    """If [X, Y] is diagonal and nonzero, the power-diagonal matrix must have rank <= n-1."""
    K = commutator(X, Y)
    applies = K.is_diagonal() and not K.is_zero()
    r = power_diagonal_matrix(X, Y).rank()
    return TaoReport(applies, r, (not applies) or r <= X.n - 1)


def diag_lemma_check(X: RationalMatrix, Y: RationalMatrix, pi, use_inverse: bool = False) -> bool:
    """diag(XY) == pi . diag(YX), i.e. (XY)_{pi(i),pi(i)} == (YX)_ii for every i.

    ``use_inverse`` tests (XY)_ii == (YX)_{pi(i),pi(i)} instead.
    """
    pi = parse_perm(pi)
    q = pi if use_inverse else pi.inverse()
    XY, YX = X @ Y, Y @ X
    return all(XY.entry(i, i) == YX.entry(q(i), q(i)) for i in range(1, X.n + 1))


def random_d_point(n: int, rng: random.Random, moves: int = 6, lo: int = -5, hi: int = 5):
    """A point of D with (generically) nonzero diagonal commutator.

    Starts at a central point (P t, s P^-1) for a random non-identity pi and
    applies moves that keep [X, Y] diagonal: conjugation by an invertible
    diagonal or a permutation matrix, Y += c X^k, X += c Y^k, and
    (X, Y) -> (aX + bY, cX + dY).
    """
    perms = [p for p in itertools.permutations(range(1, n + 1)) if list(p) != list(range(1, n + 1))]
    pi = Permutation(rng.choice(perms))
    params = random_params(pi, rng, unipotent=False, lo=lo, hi=hi)
    X, Y = sample_point(params)
    for _ in range(moves):
        move = rng.randrange(5)
        if move == 0:
            d = [rng.choice([x for x in range(lo, hi + 1) if x]) for _ in range(n)]
            Dm, Di = RationalMatrix.diagonal(d), RationalMatrix.diagonal([Fraction(1, x) for x in d])
            X, Y = Dm @ X @ Di, Dm @ Y @ Di
        elif move == 1:
            P = permutation_matrix(Permutation(tuple(rng.sample(range(1, n + 1), n))))
            X, Y = P @ X @ P.transpose(), P @ Y @ P.transpose()
        elif move == 2:
            Y = Y + (X ** rng.randrange(n)).scale(rng.randint(lo, hi))
        elif move == 3:
            X = X + (Y ** rng.randrange(n)).scale(rng.randint(lo, hi))
        else:
            while True:
                a, b, c, d = (rng.randint(lo, hi) for _ in range(4))
                if a * d - b * c:
                    break
            X, Y = X.scale(a) + Y.scale(b), X.scale(c) + Y.scale(d)
    return X, Y


def tao_point_witness(n: int) -> tuple[RationalMatrix, RationalMatrix]:
    """The commuting pair (diag(1..n), 0), whose power-diagonal matrix has full rank n."""
    return RationalMatrix.diagonal(list(range(1, n + 1))), RationalMatrix.zeros(n)
