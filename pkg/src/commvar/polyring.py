"""Exact multivariate polynomials over QQ with an (A, B) bigrading.

Monomials are dense exponent tuples over the variables of a :class:`PolyRing`.
Polynomials are immutable maps monomial -> Fraction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # tuple[int, ...]


def make_rational(num: int, den: int = 1) -> Fraction:
    """Return ``num/den`` in lowest terms with a positive denominator."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(int(num), int(den))


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring QQ[x_0, ..., x_{N-1}] with a bidegree per variable.

    The variable order of ``names`` is the tie-break enumeration used by
    every term order.  Bidegrees default to (1, 0) for every variable.
    """

    names: tuple[str, ...]
    bidegrees: tuple[tuple[int, int], ...] | None = None
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if self.bidegrees is None:
            object.__setattr__(self, "bidegrees", ((1, 0),) * len(self.names))
        object.__setattr__(self, "bidegrees", tuple(tuple(b) for b in self.bidegrees))
        if len(self.names) != len(self.bidegrees):
            raise ValueError("names and bidegrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.names)})

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def one_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def var_monomial(self, i: int, power: int = 1) -> Monomial:
        e = [0] * self.nvars
        e[i] = power
        return tuple(e)

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Polynomial(self, {self.var_monomial(i): Fraction(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {self.one_monomial(): c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = Fraction(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def extend(self, name: str, bidegree: tuple[int, int] = (0, 0)) -> "PolyRing":
        """Ring with one extra variable appended (lowest in every tie-break)."""
        return PolyRing(self.names + (name,), self.bidegrees + (tuple(bidegree),))

    def bidegree(self, m: Monomial) -> tuple[int, int]:
        a = b = 0
        for e, (da, db) in zip(m, self.bidegrees):
            if e:
                a += e * da
                b += e * db
        return a, b

    def render_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"


@lru_cache(maxsize=None)
def matrix_ring(n: int) -> PolyRing:
    """The ring on the 2n^2 entries of a pair of generic n x n matrices.

    Variables are enumerated X[1][1], ..., X[n][n], Y[1][1], ..., Y[n][n];
    X entries have bidegree (1, 0) and Y entries (0, 1).
    """
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    names = [f"X[{i}][{j}]" for i in range(1, n + 1) for j in range(1, n + 1)]
    names += [f"Y[{i}][{j}]" for i in range(1, n + 1) for j in range(1, n + 1)]
    bideg = [(1, 0)] * (n * n) + [(0, 1)] * (n * n)
    return PolyRing(tuple(names), tuple(bideg))


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(a + b for a, b in zip(m1, m2))


def mono_divides(d: Monomial, m: Monomial) -> bool:
    return all(a <= b for a, b in zip(d, m))


def mono_div(m: Monomial, d: Monomial) -> Monomial:
    q = tuple(b - a for a, b in zip(d, m))
    if min(q, default=0) < 0:
        raise ValueError("monomial does not divide")
    return q


def mono_lcm(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(max(a, b) for a, b in zip(m1, m2))


# ---------------------------------------------------------------------------
# term orders

_FIELD = 1 << 20  # radix of the linear order keys; exponents stay far below


@dataclass(frozen=True)
class WeightVector:
    """Integer weight per variable (negative entries allowed)."""

    weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def __len__(self):
        return len(self.weights)

    def of(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, m))


@dataclass(frozen=True)
class TermOrder:
    """A monomial order.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"weighted"``.  ``grading`` is the
    positive degree vector used by grevlex (defaults to all ones).  The
    weighted order sorts by total (graded) degree, then by *smaller* weight,
    then grevlex: so on a homogeneous polynomial the leading term sits in the
    minimal-weight part.
    """

    kind: str = "grevlex"
    weight: WeightVector | None = None
    grading: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "weighted"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "weighted" and self.weight is None:
            raise ValueError("weighted order needs a weight vector")
        if self.grading is not None and min(self.grading) <= 0:
            raise ValueError("grading must be positive")

    def coefficients(self, nvars: int) -> tuple[int, ...]:
        """Integers c_i such that m -> sum c_i m_i is order preserving.

        The key is linear in the exponents, so the key of a product is the
        sum of keys; the Groebner kernel relies on this.
        """
        return _order_coefficients(self, nvars)

    def key(self, m: Monomial) -> int:
        c = self.coefficients(len(m))
        return sum(ci * e for ci, e in zip(c, m) if e)

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def __str__(self):
        if self.kind == "weighted":
            return f"weighted{list(self.weight.weights)}"
        return self.kind


@lru_cache(maxsize=256)
def _order_coefficients(order: TermOrder, nvars: int) -> tuple[int, ...]:
    R = _FIELD
    if order.kind == "lex":
        return tuple(R ** (nvars - 1 - i) for i in range(nvars))
    grading = order.grading or (1,) * nvars
    if len(grading) != nvars:
        raise ValueError("grading length does not match ring")
    m1 = 2 * R**nvars
    if order.kind == "grevlex":
        return tuple(grading[i] * m1 - R**i for i in range(nvars))
    w = order.weight.weights
    if len(w) != nvars:
        raise ValueError("weight length does not match ring")
    m2 = m1 * (1 << 40)
    return tuple(grading[i] * m2 - w[i] * m1 - R**i for i in range(nvars))


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


def compare(order: TermOrder, m1: Monomial, m2: Monomial) -> int:
    """-1, 0 or 1 as m1 is smaller than, equal to, or larger than m2."""
    return order.compare(m1, m2)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, object] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    if len(m) != ring.nvars:
                        raise ValueError("monomial length does not match ring")
                    clean[tuple(m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {m: v * c for m, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, m: Monomial, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring, {mono_mul(m, t): v * c for t, v in self._terms.items()}
        )

    # -- inspection --------------------------------------------------------

    def sorted_terms(self, order: TermOrder = GREVLEX) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending order."""
        coeffs = order.coefficients(self.ring.nvars)
        return sorted(
            self._terms.items(),
            key=lambda mc: sum(ci * e for ci, e in zip(coeffs, mc[0]) if e),
            reverse=True,
        )

    def leading_term(self, order: TermOrder = GREVLEX) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        coeffs = order.coefficients(self.ring.nvars)
        return max(
            self._terms.items(),
            key=lambda mc: sum(ci * e for ci, e in zip(coeffs, mc[0]) if e),
        )

    def leading_monomial(self, order: TermOrder = GREVLEX) -> Monomial:
        return self.leading_term(order)[0]

    def total_degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def is_homogeneous(self, grading: Sequence[int] | None = None) -> bool:
        g = grading or (1,) * self.ring.nvars
        degs = {sum(a * e for a, e in zip(g, m)) for m in self._terms}
        return len(degs) <= 1

    def bidegrees(self) -> set[tuple[int, int]]:
        return {self.ring.bidegree(m) for m in self._terms}

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def support(self) -> set[int]:
        return {i for m in self._terms for i, e in enumerate(m) if e}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monic(self, order: TermOrder = GREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        _, c = self.leading_term(order)
        return self * (1 / c)

    def evaluate(self, values: Sequence) -> Fraction:
        """Evaluate at a point given as one value per variable."""
        total = Fraction(0)
        for m, c in self._terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t *= Fraction(v) ** e
            total += t
        return total

    def diff(self, i: int) -> "Polynomial":
        out = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return Polynomial._raw(self.ring, out)

    def substitute_vars(self, perm: Sequence[int], ring: PolyRing | None = None) -> "Polynomial":
        """Rename variable i to variable ``perm[i]`` (a relabelling, not a general map)."""
        ring = ring or self.ring
        out = {}
        for m, c in self._terms.items():
            e = [0] * ring.nvars
            for i, k in enumerate(m):
                if k:
                    e[perm[i]] += k
            out[tuple(e)] = c
        return Polynomial._raw(ring, out)

    def content_normalized(self) -> "Polynomial":
        """Scale to coprime integer coefficients with positive grevlex leading coefficient."""
        if not self._terms:
            return self
        from math import gcd, lcm

        den = 1
        for c in self._terms.values():
            den = lcm(den, c.denominator)
        g = 0
        for c in self._terms.values():
            g = gcd(g, (c * den).numerator)
        scale = Fraction(den, g)
        if self.leading_term()[1] < 0:
            scale = -scale
        return self * scale

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Polynomial({render(self)!r})"


def render(p: Polynomial) -> str:
    """Canonical text: descending grevlex, coefficients ``num/den``, ``X[i][j]`` names."""
    if not p._terms:
        return "0"
    out = []
    for k, (m, c) in enumerate(p.sorted_terms(GREVLEX)):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        mono = p.ring.render_monomial(m)
        if mono == "1":
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Inverse of :func:`render` (accepts only that format)."""
    text = text.strip()
    if text == "0":
        return ring.zero()
    tokens = []
    sign = 1
    buf = ""
    i = 0
    if text.startswith("-"):
        sign, i = -1, 1
    while i < len(text):
        if text.startswith(" + ", i) or text.startswith(" - ", i):
            tokens.append((sign, buf))
            sign = 1 if text[i + 1] == "+" else -1
            buf = ""
            i += 3
        else:
            buf += text[i]
            i += 1
    tokens.append((sign, buf))
    terms: dict = {}
    for sgn, body in tokens:
        coeff = Fraction(sgn)
        exps = [0] * ring.nvars
        for factor in body.split("*"):
            if factor[0].isdigit():
                coeff *= Fraction(factor)
                continue
            name, _, power = factor.partition("^")
            exps[ring.index(name)] += int(power) if power else 1
        m = tuple(exps)
        terms[m] = terms.get(m, 0) + coeff
    return Polynomial(ring, terms)


def weight_initial_form(p: Polynomial, w: WeightVector) -> Polynomial:
    """Sum of the terms of ``p`` with minimal ``w``-weight."""
    if not p._terms:
        raise ValueError("initial form of the zero polynomial")
    weights = {m: w.of(m) for m in p._terms}
    low = min(weights.values())
    return Polynomial._raw(p.ring, {m: c for m, c in p._terms.items() if weights[m] == low})


def weight_parts(p: Polynomial, w: WeightVector) -> dict[int, Polynomial]:
    """Split ``p`` into its weight-homogeneous components."""
    parts: dict[int, dict] = {}
    for m, c in p._terms.items():
        parts.setdefault(w.of(m), {})[m] = c
    return {k: Polynomial._raw(p.ring, v) for k, v in sorted(parts.items())}


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def linear_combination(polys: Iterable[Polynomial], coeffs: Iterable) -> Polynomial:
    polys = list(polys)
    if not polys:
        raise ValueError("empty combination")
    total = polys[0].ring.zero()
    for p, c in zip(polys, coeffs):
        total = total + p * c
    return total
