"""Dimensions, K-polynomials and (bi)degrees of monomial ideals.

A scheme ideal is handled through the initial ideal of a Groebner basis; the
multidegree is the lowest-degree part of K(1 - A, 1 - B).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .groebner import GroebnerBasis, IdealSpec, buchberger, initial_ideal
from .polyring import GREVLEX, TermOrder

INCLUSION_EXCLUSION_CAP = 24


class InconsistentMultidegree(RuntimeError):
    pass


def monomial_array(M: IdealSpec) -> np.ndarray:
    rows = []
    for g in M.generators:
        if not g.is_monomial():
            raise ValueError(f"not a monomial generator: {g}")
        (m,) = g.terms
        rows.append(m)
    return np.array(rows, dtype=np.int64).reshape(len(rows), M.ring.nvars)


def _grading_arrays(M: IdealSpec, grading) -> tuple[np.ndarray, np.ndarray]:
    if grading is None:
        grading = M.ring.bidegrees
    elif grading == "total":
        grading = [(1, 0)] * M.ring.nvars
    da = np.array([g[0] for g in grading], dtype=np.int64)
    db = np.array([g[1] for g in grading], dtype=np.int64)
    if len(da) != M.ring.nvars:
        raise ValueError("grading does not match the ring")
    return da, db


def monomial_dimension(M: IdealSpec, num_vars: int | None = None, method: str = "branch") -> int:
    """Krull dimension of S/M: the most variables that avoid containing any generator support."""
    gens = monomial_array(M)
    n = M.ring.nvars if num_vars is None else num_vars
    if gens.shape[1] != n:
        raise ValueError("num_vars does not match the ring")
    if method == "exhaustive":
        return kernels.max_free_set_exhaustive(gens)
    if method == "branch":
        return n - kernels.codimension_branch_and_bound(gens)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KPolynomial:
    """Integer polynomial in a, b, stored as {(i, j): coeff}."""

    terms: Mapping[tuple[int, int], int]

    @classmethod
    def from_array(cls, arr) -> "KPolynomial":
        return cls({(int(i), int(j)): int(arr[i, j]) for i, j in zip(*np.nonzero(arr))})

    def __eq__(self, other):
        if not isinstance(other, KPolynomial):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return _render_ab(self.terms, "a", "b")


def k_polynomial(M: IdealSpec, grading=None, method: str = "pivot") -> KPolynomial:
    """Numerator of the bigraded Hilbert series of S/M over prod (1-a)(1-b)."""
    gens = monomial_array(M)
    da, db = _grading_arrays(M, grading)
    if method == "pivot":
        arr = kernels.kpoly_pivot(gens, da, db)
    elif method == "inclusion_exclusion":
        gens = kernels.minimalize(gens)
        if gens.shape[0] > INCLUSION_EXCLUSION_CAP:
            raise ValueError(
                f"{gens.shape[0]} minimal generators; inclusion-exclusion is capped at "
                f"{INCLUSION_EXCLUSION_CAP}"
            )
        arr = kernels.kpoly_inclusion_exclusion(gens, da, db)
    else:
        raise ValueError(f"unknown method {method!r}")
    return KPolynomial.from_array(arr)


# ---------------------------------------------------------------------------


_TERM_RE = re.compile(r"^(\d*)(?:A(?:\^(\d+))?)?(?:B(?:\^(\d+))?)?$")


@dataclass(frozen=True)
class BidegreePolynomial:
    """Homogeneous polynomial in A, B with nonnegative integer coefficients."""

    terms: Mapping[tuple[int, int], int]

    def __post_init__(self):
        clean = {(int(i), int(j)): int(c) for (i, j), c in dict(self.terms).items() if c}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def one(cls) -> "BidegreePolynomial":
        return cls({(0, 0): 1})

    @classmethod
    def parse(cls, text: str) -> "BidegreePolynomial":
        terms: dict = {}
        for chunk in text.replace(" ", "").split("+"):
            if not chunk:
                continue
            m = _TERM_RE.match(chunk)
            if not m or chunk in ("",):
                raise ValueError(f"cannot parse term {chunk!r}")
            coeff, pa, pb = m.groups()
            i = (int(pa) if pa else 1) if "A" in chunk else 0
            j = (int(pb) if pb else 1) if "B" in chunk else 0
            c = int(coeff) if coeff else 1
            terms[(i, j)] = terms.get((i, j), 0) + c
        return cls(terms)

    @property
    def degree(self) -> int:
        degs = {i + j for i, j in self.terms}
        if len(degs) > 1:
            raise ValueError("not homogeneous")
        return degs.pop() if degs else -1

    def is_homogeneous(self) -> bool:
        return len({i + j for i, j in self.terms}) <= 1

    def evaluate(self, A=1, B=1):
        return sum(c * A**i * B**j for (i, j), c in self.terms.items())

    def swap(self) -> "BidegreePolynomial":
        return BidegreePolynomial({(j, i): c for (i, j), c in self.terms.items()})

    def __add__(self, other: "BidegreePolynomial") -> "BidegreePolynomial":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BidegreePolynomial(out)

    def __mul__(self, other: "BidegreePolynomial") -> "BidegreePolynomial":
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BidegreePolynomial(out)

    def __pow__(self, k: int) -> "BidegreePolynomial":
        out = BidegreePolynomial.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, BidegreePolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        return _render_ab(self.terms, "A", "B", upper=True)

    __repr__ = __str__

    def to_json(self) -> dict[str, int]:
        return {f"A^{i} B^{j}": c for (i, j), c in sorted(self.terms.items(), reverse=True)}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "BidegreePolynomial":
        terms = {}
        for key, c in data.items():
            a, b = key.split()
            terms[(int(a[2:]), int(b[2:]))] = int(c)
        return cls(terms)


def _render_ab(terms, x, y, upper=False) -> str:
    """Descending total degree, then descending power of the first variable."""
    if not terms:
        return "0"
    parts = []
    for (i, j), c in sorted(terms.items(), key=lambda t: (-t[0][0] - t[0][1], -t[0][0])):
        mono = ""
        if i:
            mono += x + (f"^{i}" if i > 1 else "")
        if j:
            if mono and not upper:
                mono += "*"
            mono += y + (f"^{j}" if j > 1 else "")
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}{mono}" if upper else f"{a}*{mono}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def lowest_part_of_substitution(K: KPolynomial) -> tuple[int, dict]:
    """Lowest-degree homogeneous part of K(1 - A, 1 - B), as (degree, terms)."""
    coeffs: dict[tuple[int, int], int] = {}
    for (i, j), c in K.terms.items():
        for p in range(i + 1):
            cp = comb(i, p)
            for q in range(j + 1):
                v = c * cp * comb(j, q)
                if (p + q) % 2:
                    v = -v
                coeffs[(p, q)] = coeffs.get((p, q), 0) + v
    coeffs = {k: v for k, v in coeffs.items() if v}
    if not coeffs:
        raise InconsistentMultidegree("K-polynomial vanishes identically (unit ideal?)")
    low = min(p + q for p, q in coeffs)
    return low, {k: v for k, v in coeffs.items() if sum(k) == low}


def multidegree(M: IdealSpec, grading=None, kpoly: KPolynomial | None = None) -> BidegreePolynomial:
    K = kpoly or k_polynomial(M, grading)
    low, terms = lowest_part_of_substitution(K)
    codim = M.ring.nvars - monomial_dimension(M)
    if grading is None or grading != "total":
        # a variable of bidegree (0, 0) would break the codimension count
        da, db = _grading_arrays(M, grading)
        if ((da + db) != 1).any():
            raise ValueError("multidegree needs every variable of degree (1,0) or (0,1)")
    if low != codim:
        raise InconsistentMultidegree(f"lowest degree {low} but codimension {codim}")
    if any(c < 0 for c in terms.values()):
        raise InconsistentMultidegree(f"negative multidegree coefficient in {terms}")
    return BidegreePolynomial(terms)


def _initial(I: IdealSpec, order: TermOrder, gb: GroebnerBasis | None, budget) -> IdealSpec:
    if I.is_monomial():
        return I
    gb = gb or buchberger(I, order, budget)
    return initial_ideal(gb)


def degree(I: IdealSpec, order: TermOrder = GREVLEX, gb: GroebnerBasis | None = None,
           budget_seconds: float | None = None) -> int:
    """Degree of the cone cut out by a homogeneous ideal."""
    M = _initial(I, order, gb, budget_seconds)
    md = multidegree(M, "total")
    (c,) = md.terms.values()
    return c


def bidegree(I: IdealSpec, order: TermOrder = GREVLEX, gb: GroebnerBasis | None = None,
             budget_seconds: float | None = None) -> BidegreePolynomial:
    """Multidegree for the grading X -> A, Y -> B."""
    return multidegree(_initial(I, order, gb, budget_seconds))


def dimension(I: IdealSpec, order: TermOrder = GREVLEX, gb: GroebnerBasis | None = None) -> int:
    return monomial_dimension(_initial(I, order, gb, None))


# ---------------------------------------------------------------------------
# brute-force oracle


def hilbert_function_bruteforce(M: IdealSpec, grading=None, up_to_degree: int = 6) -> dict:
    """Count standard monomials by bidegree, for total degree up to ``up_to_degree``."""
    if M.ring.nvars > 10 or up_to_degree > 8:
        raise ValueError("brute-force Hilbert function limited to 10 variables and degree 8")
    gens = monomial_array(M)
    da, db = _grading_arrays(M, grading)
    arr = kernels.standard_counts(gens, da, db, up_to_degree)
    return {(int(i), int(j)): int(arr[i, j]) for i, j in zip(*np.nonzero(arr))}


def series_from_kpolynomial(K: KPolynomial, grading: Sequence[tuple[int, int]], up_to_degree: int) -> dict:
    """Hilbert function from K / ((1-a)^p (1-b)^q), for a+b <= up_to_degree.

    Only valid when each variable has bidegree (1,0) or (0,1).
    """
    p = sum(1 for g in grading if tuple(g) == (1, 0))
    q = sum(1 for g in grading if tuple(g) == (0, 1))
    if p + q != len(grading):
        raise ValueError("series expansion needs a standard bigrading")

    def count(k, d):  # monomials of degree d in k variables
        if d < 0:
            return 0
        if k == 0:
            return 1 if d == 0 else 0
        return comb(k - 1 + d, d)

    out = {}
    for a in range(up_to_degree + 1):
        for b in range(up_to_degree + 1 - a):
            v = sum(c * count(p, a - i) * count(q, b - j) for (i, j), c in K.terms.items())
            if v:
                out[(a, b)] = v
    return out
