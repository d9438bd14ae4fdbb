"""Published degrees and bidegrees of the component closures for n <= 3.

Only the star-irreducible permutations are listed; the others follow from
d'_{pi * rho} = d'_pi d'_rho (AB)^{k(n-k)}.
"""
from __future__ import annotations

from .hilbert import BidegreePolynomial
from .permlab import Permutation, star_splits

IRREDUCIBLE_DEGREES = {"1": 1, "21": 3, "231": 13, "312": 13, "321": 31}

IRREDUCIBLE_BIDEGREES = {
    "1": "1",
    "21": "A^2 + AB + B^2",
    "231": "2A^5B + 4A^4B^2 + 4A^3B^3 + 2A^2B^4 + AB^5",
    "312": "A^5B + 2A^4B^2 + 4A^3B^3 + 4A^2B^4 + 2AB^5",
    "321": "A^6 + 3A^5B + 7A^4B^2 + 9A^3B^3 + 7A^2B^4 + 3AB^5 + B^6",
}

# the n = 3 table in the order it is usually written
DEGREE_TABLE_N3 = {"123": 1, "213": 3, "132": 3, "312": 13, "231": 13, "321": 31}


def published_bidegree(pi: Permutation) -> BidegreePolynomial | None:
    key = str(pi)
    if key in IRREDUCIBLE_BIDEGREES:
        return BidegreePolynomial.parse(IRREDUCIBLE_BIDEGREES[key])
    splits = star_splits(pi)
    if not splits:
        return None
    k, left, right = splits[0]
    a, b = published_bidegree(left), published_bidegree(right)
    if a is None or b is None:
        return None
    ab = BidegreePolynomial({(1, 1): 1}) ** (k * (pi.n - k))
    return a * b * ab


def published_degree(pi: Permutation) -> int | None:
    d = published_bidegree(pi)
    return None if d is None else d.evaluate(1, 1)
