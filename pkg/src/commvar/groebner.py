"""Division, Buchberger's algorithm, reduced bases and initial ideals.

Inside the kernel a monomial is a packed Python int (16 bits per exponent,
the top bit of each field kept clear as a borrow guard) and each term also
carries its order key, which is linear in the exponents.  Multiplying
monomials is then integer addition, divisibility is one subtract-and-mask,
and the term order is integer comparison.
"""
from __future__ import annotations

import heapq
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import (
    GREVLEX,
    Polynomial,
    PolyRing,
    TermOrder,
    WeightVector,
    parse_polynomial,
    render,
    weight_initial_form,
)

try:  # gmpy2 rationals are several times faster than Fraction
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

log = logging.getLogger(__name__)

_W = 16
_GUARD_BIT = 1 << (_W - 1)
_FIELD_MASK = (1 << _W) - 1


class BudgetExceeded(RuntimeError):
    """A Groebner computation ran past its wall-clock budget."""


@dataclass(frozen=True)
class IdealSpec:
    """Generators plus a provenance label.

    ``ring`` may be omitted when there is at least one generator; an empty
    generator list (the zero ideal) needs it.
    """

    generators: tuple[Polynomial, ...]
    label: str = ""
    ring: PolyRing | None = None

    def __post_init__(self):
        gens = tuple(self.generators)
        ring = self.ring
        if ring is None:
            if not gens:
                raise ValueError("the zero ideal needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.is_zero():
                raise ValueError("zero generator")
            if g.ring != ring:
                raise ValueError("generators live in different rings")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "ring", ring)

    def __len__(self):
        return len(self.generators)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.generators)

    def is_bihomogeneous(self) -> bool:
        return all(g.is_bihomogeneous() for g in self.generators)


class _Packer:
    """Conversion between exponent tuples and the kernel representation."""

    def __init__(self, ring: PolyRing, order: TermOrder):
        self.ring = ring
        self.order = order
        self.n = ring.nvars
        self.coeffs = order.coefficients(self.n)
        self.guard = sum(_GUARD_BIT << (_W * i) for i in range(self.n))

    def pack(self, m) -> tuple[int, int]:
        packed = 0
        key = 0
        for i, e in enumerate(m):
            if e:
                if e >= _GUARD_BIT:
                    raise OverflowError("exponent too large for the packed kernel")
                packed |= e << (_W * i)
                key += self.coeffs[i] * e
        return key, packed

    def unpack(self, packed: int) -> tuple:
        return tuple((packed >> (_W * i)) & _FIELD_MASK for i in range(self.n))

    def to_kernel(self, p: Polynomial) -> list:
        """Descending list of [key, packed, coeff]."""
        terms = []
        for m, c in p.terms.items():
            k, pk = self.pack(m)
            terms.append((k, pk, _Q(c.numerator, c.denominator)))
        terms.sort(key=lambda t: t[0], reverse=True)
        return terms

    def from_kernel(self, terms) -> Polynomial:
        out = {}
        for _, pk, c in terms:
            out[self.unpack(pk)] = Fraction(int(c.numerator), int(c.denominator))
        return Polynomial._raw(self.ring, out)


def _divides(d: int, m: int, guard: int) -> bool:
    return ((m | guard) - d) & guard == guard


def _lcm(a: int, b: int, guard: int) -> int:
    ge = (((a | guard) - b) & guard) >> (_W - 1)
    full = (ge << _W) - ge
    return (a & full) | (b & ~full)


def _monic(terms: list) -> list:
    lc = terms[0][2]
    if lc == 1:
        return terms
    inv = 1 / lc
    return [(k, m, c * inv) for k, m, c in terms]


class _Reducer:
    """Normal forms against a growing list of monic kernel polynomials."""

    def __init__(self, guard: int):
        self.guard = guard
        self.polys: list[list] = []
        self.active: list[int] = []  # indices usable as reducers, in listed order

    def add(self, terms: list) -> int:
        self.polys.append(terms)
        return len(self.polys) - 1

    def find(self, m: int):
        guard = self.guard
        polys = self.polys
        for i in self.active:
            lm = polys[i][0][1]
            if ((m | guard) - lm) & guard == guard:
                return polys[i]
        return None

    def reduce(self, terms: Iterable, full: bool = True) -> list:
        """Reduce, always working on the largest remaining term first."""
        work = {}
        heap = []
        for k, m, c in terms:
            work[k] = (m, c)
            heap.append(-k)
        heapq.heapify(heap)
        rem = []
        find = self.find
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            k = -pop(heap)
            entry = work.pop(k, None)
            if entry is None:
                continue
            m, c = entry
            g = find(m)
            if g is None:
                rem.append((k, m, c))
                if not full:
                    rest = sorted(((kk, mm, cc) for kk, (mm, cc) in work.items()), reverse=True)
                    rem.extend(rest)
                    break
                continue
            gk, gm, _ = g[0]
            dk = k - gk
            dm = m - gm
            for tk, tm, tc in g[1:]:
                kk = dk + tk
                e = work.get(kk)
                if e is None:
                    work[kk] = (dm + tm, -c * tc)
                    push(heap, -kk)
                else:
                    nc = e[1] - c * tc
                    if nc:
                        work[kk] = (e[0], nc)
                    else:
                        del work[kk]
        return rem


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis sorted by descending leading monomial."""

    order: TermOrder
    basis: tuple[Polynomial, ...]
    source: IdealSpec
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def ring(self) -> PolyRing:
        return self.source.ring

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial(self.order) for g in self.basis]

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


class Divider:
    """Division by a fixed list ``G``, set up once and reused for many dividends.

    The largest reducible term is always treated first and the first element
    of ``G`` (in listed order) whose leading monomial divides it is used.
    """

    def __init__(self, G: Sequence[Polynomial], order: TermOrder = GREVLEX):
        self.order = order
        self._packer = None
        self._red = None
        self._G = list(G)
        for g in self._G:
            if g.is_zero():
                raise ValueError("cannot divide by the zero polynomial")

    def _setup(self, ring):
        if self._packer is None or self._packer.ring != ring:
            self._packer = _Packer(ring, self.order)
            self._red = _Reducer(self._packer.guard)
            for g in self._G:
                self._red.active.append(self._red.add(_monic(self._packer.to_kernel(g))))

    def remainder(self, p: Polynomial) -> Polynomial:
        if p.is_zero():
            return p
        self._setup(p.ring)
        return self._packer.from_kernel(self._red.reduce(self._packer.to_kernel(p)))


def normal_form(p: Polynomial, G: Sequence[Polynomial], order: TermOrder = GREVLEX) -> Polynomial:
    """Remainder of ``p`` on division by ``G`` (see :class:`Divider`)."""
    return Divider(G, order).remainder(p)


class _KeyOf:
    """Linear order key of a packed monomial (memoised)."""

    def __init__(self, packer: _Packer):
        self.packer = packer
        self.cache: dict[int, int] = {}

    def __call__(self, m: int) -> int:
        k = self.cache.get(m)
        if k is None:
            coeffs = self.packer.coeffs
            k = 0
            i = 0
            rest = m
            while rest:
                e = rest & _FIELD_MASK
                if e:
                    k += coeffs[i] * e
                rest >>= _W
                i += 1
            self.cache[m] = k
        return k


def _packed_degree(m: int) -> int:
    d = 0
    while m:
        d += m & _FIELD_MASK
        m >>= _W
    return d


def buchberger(I: IdealSpec, order: TermOrder = GREVLEX, budget_seconds: float | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``I``.

    Normal selection strategy (smallest lcm first, ties broken by pair
    indices) with the Gebauer-Moeller update, which applies the coprime and
    chain criteria.
    """
    t0 = time.perf_counter()
    ring = I.ring
    packer = _Packer(ring, order)
    guard = packer.guard
    keyof = _KeyOf(packer)
    red = _Reducer(guard)
    stats = {"pairs": 0, "zero_reductions": 0, "pruned": 0}

    pairs: list = []  # heap of (key(lcm), i, j, lcm)
    G: list[int] = []

    def check_budget():
        if budget_seconds is not None and time.perf_counter() - t0 > budget_seconds:
            raise BudgetExceeded(f"{I.label or 'ideal'}: Groebner budget of {budget_seconds}s exceeded")

    def update(h: int):
        nonlocal pairs
        polys = red.polys
        hm = polys[h][0][1]
        cand = []
        for g in G:
            gm = polys[g][0][1]
            l = _lcm(hm, gm, guard)
            cand.append((g, l, l == hm + gm))
        # Gebauer-Moeller: a new pair survives if coprime or if no other new
        # pair has an lcm dividing its own (ties go to the later survivor)
        D = []
        for idx, (g, l, coprime) in enumerate(cand):
            if not coprime:
                rest = cand[idx + 1:]
                if any(_divides(l2, l, guard) for _, l2, _ in rest) or any(
                    _divides(l2, l, guard) for _, l2, _ in D
                ):
                    continue
            D.append((g, l, coprime))
        new_pairs = [(g, l) for g, l, coprime in D if not coprime]
        stats["pruned"] += len(cand) - len(new_pairs)
        # old pairs killed by h (Buchberger's chain criterion)
        kept_old = []
        for entry in pairs:
            _, i, j, l = entry
            if _divides(hm, l, guard):
                li = _lcm(polys[i][0][1], hm, guard)
                lj = _lcm(polys[j][0][1], hm, guard)
                if li != l and lj != l:
                    stats["pruned"] += 1
                    continue
            kept_old.append(entry)
        if len(kept_old) != len(pairs):
            heapq.heapify(kept_old)
            pairs = kept_old
        for g, l in new_pairs:
            heapq.heappush(pairs, (keyof(l), min(g, h), max(g, h), l))
        # drop basis elements whose leading monomial h divides
        G[:] = [g for g in G if not _divides(hm, polys[g][0][1], guard)]
        G.append(h)
        red.active = sorted(G, key=lambda i: polys[i][0][0])

    # interreduce the inputs by inserting them one at a time, smallest first
    gens = sorted((packer.to_kernel(g) for g in I.generators), key=lambda t: t[0][0])
    for terms in gens:
        r = red.reduce(terms)
        if r:
            update(red.add(_monic(r)))

    while pairs:
        check_budget()
        _, i, j, l = heapq.heappop(pairs)
        stats["pairs"] += 1
        f, g = red.polys[i], red.polys[j]
        kl = keyof(l)
        fk, fm, _ = f[0]
        gk, gm, _ = g[0]
        df_k, df_m = kl - fk, l - fm
        dg_k, dg_m = kl - gk, l - gm
        s = {}
        for tk, tm, tc in f[1:]:
            s[df_k + tk] = (df_m + tm, tc)
        for tk, tm, tc in g[1:]:
            kk = dg_k + tk
            e = s.get(kk)
            if e is None:
                s[kk] = (dg_m + tm, -tc)
            else:
                nc = e[1] - tc
                if nc:
                    s[kk] = (e[0], nc)
                else:
                    del s[kk]
        r = red.reduce((k, m, c) for k, (m, c) in s.items())
        if not r:
            stats["zero_reductions"] += 1
            continue
        update(red.add(_monic(r)))

    basis = _interreduce([red.polys[g] for g in G], guard)
    polys = tuple(packer.from_kernel(t) for t in basis)
    stats["size"] = len(polys)
    stats["seconds"] = time.perf_counter() - t0
    log.debug("buchberger %s: %s", I.label, stats)
    return GroebnerBasis(order, polys, I, stats)


def _interreduce(polys: list[list], guard: int) -> list[list]:
    """Minimal basis, then fully reduce every tail; sorted by leading key descending."""
    polys = sorted(polys, key=lambda t: t[0][0])
    minimal = []
    for p in polys:
        lm = p[0][1]
        if any(_divides(q[0][1], lm, guard) for q in minimal):
            continue
        minimal = [q for q in minimal if not _divides(lm, q[0][1], guard)]
        minimal.append(p)
    out = []
    for idx, p in enumerate(minimal):
        red = _Reducer(guard)
        red.polys = [q for q in minimal if q is not p]
        red.active = list(range(len(red.polys)))
        tail = red.reduce(p[1:])
        out.append(_monic([p[0]] + tail))
    out.sort(key=lambda t: t[0][0], reverse=True)
    return out


def is_groebner(G: Sequence[Polynomial], order: TermOrder = GREVLEX) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    G = [g for g in G if not g.is_zero()]
    divider = Divider(G, order)
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if not divider.remainder(s_polynomial(G[a], G[b], order)).is_zero():
                return False
    return True


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder = GREVLEX) -> Polynomial:
    fm, fc = f.leading_term(order)
    gm, gc = g.leading_term(order)
    l = tuple(max(a, b) for a, b in zip(fm, gm))
    uf = tuple(a - b for a, b in zip(l, fm))
    ug = tuple(a - b for a, b in zip(l, gm))
    return f.mul_term(uf, 1 / fc) - g.mul_term(ug, 1 / gc)


def ideal_member(p: Polynomial, gb: GroebnerBasis) -> bool:
    return normal_form(p, gb.basis, gb.order).is_zero()


def reduce_by(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return normal_form(p, gb.basis, gb.order)


def initial_ideal(gb: GroebnerBasis) -> IdealSpec:
    """Monomial ideal of leading monomials (minimal generators, since gb is reduced)."""
    ring = gb.ring
    gens = tuple(ring.monomial(m) for m in gb.leading_monomials())
    return IdealSpec(gens, f"in({gb.source.label})", ring)


def ideal_contains(gb: GroebnerBasis, polys: Iterable[Polynomial]) -> bool:
    divider = Divider(gb.basis, gb.order)
    return all(divider.remainder(p).is_zero() for p in polys)


def ideal_equal(I: IdealSpec, J: IdealSpec, order: TermOrder = GREVLEX,
                gb_I: GroebnerBasis | None = None, gb_J: GroebnerBasis | None = None,
                budget_seconds: float | None = None) -> bool:
    """Mutual containment, checked by normal forms of generators."""
    gb_J = gb_J or buchberger(J, order, budget_seconds)
    if not ideal_contains(gb_J, I.generators):
        return False
    gb_I = gb_I or buchberger(I, order, budget_seconds)
    return ideal_contains(gb_I, J.generators)


# ---------------------------------------------------------------------------
# weight degenerations


def initial_forms_ideal(I: IdealSpec, w: WeightVector, method: str = "auto",
                        budget_seconds: float | None = None) -> IdealSpec:
    """Generators of the ideal of minimal-weight initial forms of ``I``.

    ``method="weighted"`` computes a basis in the order (degree, smaller
    weight, grevlex), which is only valid for homogeneous generators.
    ``method="homogenize"`` adjoins a parameter ``h`` and works with the flat
    family directly.  ``"auto"`` picks the first when the input is
    homogeneous.
    """
    homogeneous = all(g.is_homogeneous() for g in I.generators)
    if method == "auto":
        method = "weighted" if homogeneous else "homogenize"
    if method == "weighted":
        if not homogeneous:
            raise ValueError("weighted path needs homogeneous generators")
        order = TermOrder("weighted", w)
        gb = buchberger(I, order, budget_seconds)
        gens = tuple(weight_initial_form(g, w) for g in gb.basis)
        return IdealSpec(gens, f"in_w({I.label})", I.ring)
    if method == "homogenize":
        return _initial_forms_by_family(I, w, budget_seconds)
    raise ValueError(f"unknown method {method!r}")


def _initial_forms_by_family(I: IdealSpec, w: WeightVector, budget_seconds=None) -> IdealSpec:
    """in_w(I) as the special fibre of the family over the parameter h.

    Each generator f becomes h^(-min) f(h^{w_1} x_1, ...) after shifting the
    weights to be positive.  Giving x_i degree C - w_i and h degree 1 makes
    every such generator homogeneous; a grevlex basis with h last then
    saturates by h once h-powers are divided out, and setting h = 0 gives the
    initial forms.
    """
    ring = I.ring
    shift = max(0, -min(w.weights)) + 1
    wp = [x + shift for x in w.weights]
    homogeneous = all(g.is_homogeneous() for g in I.generators)
    if not homogeneous:
        # positive shifts only commute with in_w on homogeneous input; for
        # general input use the raw weights, which must then be nonnegative
        if min(w.weights) < 0:
            raise ValueError("non-homogeneous input needs nonnegative weights")
        wp = list(w.weights)
    big = ring.extend("h")
    C = max(wp) + 1
    grading = tuple(C - x for x in wp) + (1,)
    fam = []
    for f in I.generators:
        low = min(sum(a * e for a, e in zip(wp, m)) for m in f.terms)
        terms = {}
        for m, c in f.terms.items():
            hpow = sum(a * e for a, e in zip(wp, m)) - low
            terms[tuple(m) + (hpow,)] = c
        fam.append(Polynomial(big, terms))
    order = TermOrder("grevlex", grading=grading)
    gb = buchberger(IdealSpec(tuple(fam), f"family({I.label})"), order, budget_seconds)
    gens = []
    for g in gb.basis:
        hmin = min(m[-1] for m in g.terms)
        special = {m[:-1]: c for m, c in g.terms.items() if m[-1] == hmin}
        gens.append(Polynomial(ring, special))
    return IdealSpec(tuple(gens), f"in_w({I.label})", ring)


# ---------------------------------------------------------------------------
# text serialisation


def serialize_basis(gb: GroebnerBasis) -> str:
    """One canonical polynomial per line, sorted by leading monomial (descending)."""
    lines = [f"# order {gb.order}", f"# ring {' '.join(gb.ring.names)}"]
    lines += [render(g) for g in gb.basis]
    return "\n".join(lines) + "\n"


def parse_basis(text: str, ring: PolyRing) -> list[Polynomial]:
    return [parse_polynomial(line, ring) for line in text.splitlines()
            if line.strip() and not line.startswith("#")]
