import itertools
from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from commvar.linalg import rank
from commvar.permlab import (
    PartialPerm,
    Permutation,
    bruhat_leq,
    bruhat_leq_tableau,
    bruhat_lower_interval,
    concat_star,
    count_partial_perms,
    enumerate_objects,
    enumerate_partial_perms,
    enumerate_permutations,
    fiber_dimension,
    is_star_irreducible,
    orbit_dimension,
    parse_perm,
    star_splits,
    stratum_dimension,
    sw_rank,
    sw_rank_matrix,
    table_order,
)


@st.composite
def permutations(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    return Permutation(tuple(draw(st.permutations(range(1, n + 1)))))


@st.composite
def partial_perms(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(0, n))
    rows = draw(st.permutations(range(1, n + 1)))[:k]
    cols = draw(st.permutations(range(1, n + 1)))[:k]
    return PartialPerm(n, frozenset(zip(rows, cols)))


def test_parse_and_print():
    assert str(parse_perm("231")) == "231"
    big = parse_perm("10,1,2,3,4,5,6,7,8,9")
    assert big.n == 10 and str(big) == "10,1,2,3,4,5,6,7,8,9"
    with pytest.raises(ValueError):
        parse_perm("224")


def test_matrix_convention_sends_basis_vectors():
    pi = parse_perm("231")
    M = pi.matrix()
    for j in range(1, 4):
        column = [M[i][j - 1] for i in range(3)]
        assert column.index(1) + 1 == pi(j)


def _bubble_sort_swaps(seq):
    seq, swaps = list(seq), 0
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                swaps += 1
    return swaps


@given(permutations())
def test_length_inverse_and_w0(pi):
    assert pi.length() == _bubble_sort_swaps(pi.one_line)
    assert pi.inverse().compose(pi).is_identity()
    assert pi.inverse().length() == pi.length()
    w0 = Permutation.longest(pi.n)
    assert pi.conjugate_by_w0() == w0.compose(pi).compose(w0)
    assert pi.compose(w0).length() == w0.length() - pi.length()


@given(permutations(), permutations())
def test_star_concatenation_splits_back(a, b):
    c = concat_star(a, b)
    assert (a.n, a, b) in star_splits(c)
    assert c.length() == a.length() + b.length()


def test_star_irreducibles_n3():
    irreducible = sorted(str(p) for p in enumerate_permutations(3) if is_star_irreducible(p))
    assert irreducible == ["231", "312", "321"]
    assert concat_star(parse_perm("21"), parse_perm("1")) == parse_perm("213")
    assert concat_star(parse_perm("1"), parse_perm("21")) == parse_perm("132")


def test_sw_rank_examples():
    assert sw_rank(parse_perm("12"), 1, 1) == 0
    assert sw_rank(parse_perm("21"), 1, 1) == 1
    assert sw_rank_matrix(Permutation.identity(3))[2] == [1, 2, 3]


def _bruhat_by_reflections(n):
    """Transitive closure of pi -> pi t with length dropping (t a transposition)."""
    below = {}
    perms = enumerate_permutations(n)
    for pi in perms:
        seen, queue = {pi}, deque([pi])
        while queue:
            cur = queue.popleft()
            for i, j in itertools.combinations(range(n), 2):
                ol = list(cur.one_line)
                ol[i], ol[j] = ol[j], ol[i]
                nxt = Permutation(tuple(ol))
                if nxt.length() < cur.length() and nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        below[pi] = seen
    return below


@pytest.mark.parametrize("n", [2, 3, 4])
def test_bruhat_matches_reflection_closure(n):
    below = _bruhat_by_reflections(n)
    for pi in enumerate_permutations(n):
        for rho in enumerate_permutations(n):
            assert bruhat_leq(rho, pi) == (rho in below[pi])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_bruhat_rank_and_tableau_criteria_agree(n):
    perms = enumerate_permutations(n)
    for pi, rho in itertools.product(perms, perms):
        assert bruhat_leq(rho, pi) == bruhat_leq_tableau(rho, pi)


def test_bruhat_intervals():
    assert sorted(str(p) for p in bruhat_lower_interval(parse_perm("312"))) == ["123", "132", "213", "312"]
    assert len(bruhat_lower_interval(Permutation.longest(3))) == 6
    assert bruhat_lower_interval(Permutation.identity(3)) == [Permutation.identity(3)]


@pytest.mark.parametrize("n", range(1, 6))
def test_partial_perm_counts(n):
    assert len(enumerate_partial_perms(n)) == count_partial_perms(n)
    assert len(set(enumerate_partial_perms(n))) == count_partial_perms(n)


def test_partial_perm_count_n2():
    assert count_partial_perms(2) == 7
    assert len(enumerate_objects("partial_perms", 2)) == 7
    assert len(enumerate_objects("permutations", 3)) == 6


def _orbit_dimension_by_tangent(p: PartialPerm) -> int:
    """Rank of (u, v) -> u p - p v over upper-triangular u, v."""
    n, M = p.n, p.matrix()
    cols = []
    for a, b in itertools.combinations_with_replacement(range(n), 2):
        E = [[1 if (i, j) == (a, b) else 0 for j in range(n)] for i in range(n)]
        up = [[sum(E[i][k] * M[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        pv = [[sum(M[i][k] * E[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        cols.append([x for row in up for x in row])
        cols.append([x for row in pv for x in row])
    return rank(cols)


def _fiber_dimension_by_linear_algebra(p: PartialPerm) -> int:
    """dim {Y : pY and Yp upper triangular}."""
    n, M = p.n, p.matrix()
    constraints = []
    for i in range(n):
        for j in range(i):
            # (pY)_{ij} = sum_k M[i][k] Y[k][j];  (Yp)_{ij} = sum_k Y[i][k] M[k][j]
            constraints.append([M[i][r] if c == j else 0 for r in range(n) for c in range(n)])
            constraints.append([M[c][j] if r == i else 0 for r in range(n) for c in range(n)])
    return n * n - rank(constraints)


@given(partial_perms())
def test_orbit_and_fiber_dimensions_match_linear_algebra(p):
    assert orbit_dimension(p) == _orbit_dimension_by_tangent(p)
    assert fiber_dimension(p) == _fiber_dimension_by_linear_algebra(p)
    assert orbit_dimension(p) + fiber_dimension(p) == stratum_dimension(p)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_stratum_codimension_bound(n):
    for p in enumerate_partial_perms(n):
        codim = 2 * n * n - stratum_dimension(p)
        assert codim >= n * n - n
        assert (codim == n * n - n) == p.is_permutation()


def test_partial_perm_round_trip():
    pi = parse_perm("312")
    assert pi.as_partial().to_permutation() == pi
    assert PartialPerm.from_matrix(pi.matrix()) == pi.as_partial()
    with pytest.raises(ValueError):
        PartialPerm(2, frozenset({(1, 1), (1, 2)}))


def test_table_order_n3():
    order = [str(p) for p in sorted(enumerate_permutations(3), key=table_order)]
    assert order == ["123", "213", "132", "312", "231", "321"]
