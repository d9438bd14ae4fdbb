"""Integer kernels for monomial ideals.

A monomial ideal is an int64 array of shape (ngens, nvars).  Every kernel is
compiled with numba's ``njit`` unless ``COMMVAR_NUMBA=0`` is set (or numba is
missing), in which case the same source runs as plain Python over numpy, with
the divisibility test swapped for a broadcast numpy version.
"""
from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("COMMVAR_NUMBA", "1").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and _FLAG not in ("0", "false", "no", "off")


def _jit(f):
    if USE_NUMBA:
        return numba.njit(cache=True)(f)
    return f


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# minimal generators


def _minimal_mask_loops(gens):
    k, n = gens.shape
    keep = np.ones(k, dtype=np.bool_)
    for i in range(k):
        for j in range(k):
            if i == j or not keep[j]:
                continue
            divides = True
            equal = True
            for v in range(n):
                if gens[j, v] > gens[i, v]:
                    divides = False
                    break
                if gens[j, v] != gens[i, v]:
                    equal = False
            if divides and (not equal or j < i):
                keep[i] = False
                break
    return keep


def _minimal_mask_numpy(gens):
    k = gens.shape[0]
    if k == 0:
        return np.ones(0, dtype=np.bool_)
    # div[i, j]: generator j divides generator i
    div = np.all(gens[None, :, :] <= gens[:, None, :], axis=2)
    eq = np.all(gens[None, :, :] == gens[:, None, :], axis=2)
    idx = np.arange(k)
    earlier_dup = eq & (idx[None, :] < idx[:, None])
    strict = div & ~eq
    return ~(strict.any(axis=1) | earlier_dup.any(axis=1))


minimal_mask = _jit(_minimal_mask_loops) if USE_NUMBA else _minimal_mask_numpy


def minimalize(gens):
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    return gens[minimal_mask(gens)]


# ---------------------------------------------------------------------------
# K-polynomial by pivot recursion
#
# K(I) = K(I + (x^e)) + t^{deg x^e} K(I : x^e), with x the variable shared by
# the most generators and e its least positive exponent.  Once the minimal
# generators are pairwise coprime, K(I) = prod (1 - t^{deg g}).


def _coprime_product(gens, da, db, out, sign, sa, sb):
    # expand prod (1 - a^x b^y) into ``out`` shifted by (sa, sb)
    k = gens.shape[0]
    maxa = 0
    maxb = 0
    ga = np.zeros(k, dtype=np.int64)
    gb = np.zeros(k, dtype=np.int64)
    for i in range(k):
        for v in range(gens.shape[1]):
            ga[i] += gens[i, v] * da[v]
            gb[i] += gens[i, v] * db[v]
        maxa += ga[i]
        maxb += gb[i]
    poly = np.zeros((maxa + 1, maxb + 1), dtype=np.int64)
    poly[0, 0] = 1
    ca = 0
    cb = 0
    for i in range(k):
        for x in range(ca, -1, -1):
            for y in range(cb, -1, -1):
                c = poly[x, y]
                if c != 0:
                    poly[x + ga[i], y + gb[i]] -= c
        ca += ga[i]
        cb += gb[i]
    for x in range(maxa + 1):
        for y in range(maxb + 1):
            if poly[x, y] != 0:
                out[sa + x, sb + y] += sign * poly[x, y]
    return 0


def _kpoly_rec(gens, da, db, out, sign, sa, sb):
    k, n = gens.shape
    if k == 0:
        out[sa, sb] += sign
        return 0
    gens = gens[minimal_mask(gens)]
    k = gens.shape[0]
    for i in range(k):
        if gens[i].sum() == 0:  # unit ideal
            return 0
    counts = np.zeros(n, dtype=np.int64)
    for i in range(k):
        for v in range(n):
            if gens[i, v] > 0:
                counts[v] += 1
    best = 0
    for v in range(n):
        if counts[v] > counts[best]:
            best = v
    if counts[best] <= 1:
        return _coprime_product(gens, da, db, out, sign, sa, sb)
    e = 0
    for i in range(k):
        x = gens[i, best]
        if x > 0 and (e == 0 or x < e):
            e = x
    # I + (x^e)
    plus = np.zeros((k + 1, n), dtype=np.int64)
    m = 0
    for i in range(k):
        if gens[i, best] < e:
            plus[m] = gens[i]
            m += 1
    plus[m, best] = e
    m += 1
    _kpoly_rec(plus[:m].copy(), da, db, out, sign, sa, sb)
    # I : x^e
    colon = gens.copy()
    for i in range(k):
        colon[i, best] = max(colon[i, best] - e, 0)
    _kpoly_rec(colon, da, db, out, sign, sa + e * da[best], sb + e * db[best])
    return 0


# ---------------------------------------------------------------------------
# K-polynomial by inclusion-exclusion over subsets of generators
#
# Depth-first over generators in order.  If the next generator divides the
# lcm collected so far, the branches with and without it cancel term by term
# for every completion, so the whole subtree is dropped.


def _inclexcl_rec(gens, da, db, out, j, lcm, sign):
    k, n = gens.shape
    if j == k:
        a = 0
        b = 0
        for v in range(n):
            a += lcm[v] * da[v]
            b += lcm[v] * db[v]
        out[a, b] += sign
        return 0
    divides = True
    for v in range(n):
        if gens[j, v] > lcm[v]:
            divides = False
            break
    if divides:
        return 0
    _inclexcl_rec(gens, da, db, out, j + 1, lcm, sign)
    nl = lcm.copy()
    for v in range(n):
        if gens[j, v] > nl[v]:
            nl[v] = gens[j, v]
    _inclexcl_rec(gens, da, db, out, j + 1, nl, -sign)
    return 0


# ---------------------------------------------------------------------------
# Krull dimension: largest variable set containing no generator's support


def _min_hitting_set(masks, chosen, depth, best):
    # masks: support bitmask per generator; returns size of a minimum set of
    # variables meeting every support, or ``best`` if none smaller exists
    if depth >= best:
        return best
    k = masks.shape[0]
    pick = -1
    size = 65
    for i in range(k):
        if masks[i] & chosen == 0:
            c = 0
            m = masks[i]
            while m:
                m &= m - 1
                c += 1
            if c < size:
                size = c
                pick = i
    if pick < 0:
        return depth
    m = masks[pick]
    v = 0
    while m:
        if m & 1:
            r = _min_hitting_set(masks, chosen | (np.int64(1) << v), depth + 1, best)
            if r < best:
                best = r
        m >>= 1
        v += 1
    return best


def _max_free_exhaustive(masks, nvars):
    best = 0
    total = np.int64(1) << nvars
    s = np.int64(0)
    while s < total:
        ok = True
        for i in range(masks.shape[0]):
            if masks[i] & s == masks[i]:
                ok = False
                break
        if ok:
            c = 0
            m = s
            while m:
                m &= m - 1
                c += 1
            if c > best:
                best = c
        s += 1
    return best


# ---------------------------------------------------------------------------
# standard monomial counts by enumeration


def _count_standard(gens, da, db, maxdeg, out):
    # walk all monomials of total degree <= maxdeg in lexicographic exponent order
    n = gens.shape[1]
    k = gens.shape[0]
    e = np.zeros(n, dtype=np.int64)
    deg = 0
    while True:
        standard = True
        for i in range(k):
            divides = True
            for v in range(n):
                if gens[i, v] > e[v]:
                    divides = False
                    break
            if divides:
                standard = False
                break
        if standard:
            a = 0
            b = 0
            for v in range(n):
                a += e[v] * da[v]
                b += e[v] * db[v]
            out[a, b] += 1
        # next exponent vector
        v = n - 1
        while v >= 0:
            if deg < maxdeg:
                e[v] += 1
                deg += 1
                break
            deg -= e[v]
            e[v] = 0
            v -= 1
        if v < 0:
            break
    return 0


kpoly_rec = _jit(_kpoly_rec)
coprime_product = _jit(_coprime_product)
inclexcl_rec = _jit(_inclexcl_rec)
min_hitting_set = _jit(_min_hitting_set)
max_free_exhaustive = _jit(_max_free_exhaustive)
count_standard = _jit(_count_standard)

if USE_NUMBA:
    # the recursive bodies resolve these names as globals at compile time
    _kpoly_rec = kpoly_rec
    _coprime_product = coprime_product
    _inclexcl_rec = inclexcl_rec
    _min_hitting_set = min_hitting_set


def _bounds(gens, da, db):
    # every lcm of a subset divides the lcm of all generators
    lcm = gens.max(axis=0) if gens.shape[0] else np.zeros(gens.shape[1], dtype=np.int64)
    return int(lcm @ da), int(lcm @ db)


def kpoly_pivot(gens, da, db):
    """K-polynomial coefficient table ``out[i, j]`` of a^i b^j."""
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    da = np.ascontiguousarray(da, dtype=np.int64)
    db = np.ascontiguousarray(db, dtype=np.int64)
    A, B = _bounds(gens, da, db)
    out = np.zeros((A + 1, B + 1), dtype=np.int64)
    kpoly_rec(gens, da, db, out, np.int64(1), np.int64(0), np.int64(0))
    return out


def kpoly_inclusion_exclusion(gens, da, db):
    gens = minimalize(gens)
    da = np.ascontiguousarray(da, dtype=np.int64)
    db = np.ascontiguousarray(db, dtype=np.int64)
    A, B = _bounds(gens, da, db)
    out = np.zeros((A + 1, B + 1), dtype=np.int64)
    lcm = np.zeros(gens.shape[1], dtype=np.int64)
    inclexcl_rec(gens, da, db, out, np.int64(0), lcm, np.int64(1))
    return out


def support_masks(gens):
    gens = np.asarray(gens, dtype=np.int64)
    if gens.shape[1] > 62:
        raise ValueError("support bitmasks limited to 62 variables")
    weights = np.int64(1) << np.arange(gens.shape[1], dtype=np.int64)
    return ((gens > 0).astype(np.int64) * weights).sum(axis=1).astype(np.int64)


def codimension_branch_and_bound(gens) -> int:
    masks = support_masks(minimalize(gens))
    if masks.size and (masks == 0).any():
        raise ValueError("unit ideal")
    return int(min_hitting_set(masks, np.int64(0), np.int64(0), np.int64(gens.shape[1] + 1)))


def max_free_set_exhaustive(gens) -> int:
    gens = np.asarray(gens, dtype=np.int64)
    n = gens.shape[1]
    if n > 24:
        raise ValueError("exhaustive subset search limited to 24 variables")
    return int(max_free_exhaustive(support_masks(minimalize(gens)), np.int64(n)))


def standard_counts(gens, da, db, maxdeg):
    gens = np.ascontiguousarray(gens, dtype=np.int64)
    da = np.ascontiguousarray(da, dtype=np.int64)
    db = np.ascontiguousarray(db, dtype=np.int64)
    A = int(maxdeg * max(1, int(da.max(initial=0))))
    B = int(maxdeg * max(1, int(db.max(initial=0))))
    out = np.zeros((A + 1, B + 1), dtype=np.int64)
    count_standard(gens, da, db, np.int64(maxdeg), out)
    return out
