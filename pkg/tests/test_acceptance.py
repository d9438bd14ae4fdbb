"""Acceptance suite.

Each test covers one acceptance criterion at its stated tolerance and records
a one-line description; the conftest hook prints a PASS or FAIL line for each
of them in the terminal summary.  Expected values are written out literally
here rather than imported from the package.
"""
import json
import random
import subprocess
import sys
import time
from math import comb

import pytest

from commvar.checks import (
    PASS,
    REPORT,
    Context,
    run_conjectures,
    run_degenerate,
    run_identities,
    run_smooth,
    run_tao,
)
from commvar.groebner import (
    IdealSpec,
    buchberger,
    ideal_contains,
    ideal_member,
    initial_forms_ideal,
    initial_ideal,
    is_groebner,
)
from commvar.hilbert import (
    BidegreePolynomial,
    dimension,
    hilbert_function_bruteforce,
    k_polynomial,
    monomial_dimension,
    series_from_kpolynomial,
)
from commvar.permlab import enumerate_permutations
from commvar.polyring import GREVLEX, weight_initial_form
from commvar.schemes import SchemeTag, build_ideal, degeneration_weight

DEGREES_N3 = [("123", 1), ("213", 3), ("132", 3), ("312", 13), ("231", 13), ("321", 31)]

DISPLAYED_BIDEGREES = {
    "21": {(2, 0): 1, (1, 1): 1, (0, 2): 1},
    "231": {(5, 1): 2, (4, 2): 4, (3, 3): 4, (2, 4): 2, (1, 5): 1},
    "312": {(5, 1): 1, (4, 2): 2, (3, 3): 4, (2, 4): 4, (1, 5): 2},
    "321": {(6, 0): 1, (5, 1): 3, (4, 2): 7, (3, 3): 9, (2, 4): 7, (1, 5): 3, (0, 6): 1},
}


@pytest.fixture(scope="module")
def cache_dir(tmp_path_factory):
    return str(tmp_path_factory.mktemp("gb-cache"))


@pytest.fixture(scope="module")
def degree_rows(cache_dir):
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "commvar.cli", "degrees", "--n", "3", "--format", "json",
                           "--cache-dir", cache_dir], capture_output=True, text=True, check=True)
    elapsed = time.perf_counter() - start
    return json.loads(proc.stdout)["checks"], elapsed


def contexts(cache_dir, **kw):
    return {n: Context(n=n, cache_dir=cache_dir, **kw) for n in (2, 3)}


def statuses(reports):
    return {r.name: r.status for r in reports}


def test_criterion_01_degree_table(degree_rows, record_property):
    record_property("criterion", "criterion 1: degrees --n 3 gives d = (1, 3, 3, 13, 13, 31) in under 10 minutes")
    rows, elapsed = degree_rows
    got = [(r["payload"]["pi"], r["payload"]["degree"]) for r in rows]
    assert got == DEGREES_N3
    assert elapsed < 600


def test_criterion_02_bidegrees(degree_rows, record_property):
    record_property("criterion", "criterion 2: displayed bidegrees of 21, 231, 312, 321 match coefficient for coefficient")
    by_pi = {r["payload"]["pi"]: r["payload"]["bidegree"] for r in degree_rows[0]}
    for pi, terms in DISPLAYED_BIDEGREES.items():
        if len(pi) == 3:
            assert by_pi[pi] == {f"A^{a} B^{b}": c for (a, b), c in terms.items()}, pi
    n2 = {str(p): r.bidegree for p, r in Context(n=2).all_degrees().items()}
    assert n2["21"].terms == DISPLAYED_BIDEGREES["21"]


def test_criterion_03_sum_identities(cache_dir, record_property):
    record_property("criterion", "criterion 3: degree sums are 4 and 64, bidegree sums are (A+B)^(n^2-n) for n = 2, 3")
    for n, ctx in contexts(cache_dir).items():
        N = n * n - n
        res = ctx.all_degrees()
        assert sum(r.degree for r in res.values()) == {2: 4, 3: 64}[n]
        total = {}
        for r in res.values():
            for key, c in r.bidegree.terms.items():
                total[key] = total.get(key, 0) + c
        assert total == {(a, N - a): comb(N, a) for a in range(N + 1)}
        got = statuses(run_identities(ctx))
        assert got["identities:sum-degrees"] == got["identities:sum-bidegrees"] == PASS


def test_criterion_04_structural_identities(cache_dir, record_property):
    record_property("criterion", "criterion 4: inverse, w0-conjugation, swap and star identities hold on S_2 and S_3")
    for n, ctx in contexts(cache_dir).items():
        got = statuses(run_identities(ctx))
        for name in ("inverse-symmetry", "w0-conjugation-symmetry", "inverse-swap",
                     "star-multiplicativity"):
            assert got[f"identities:{name}"] == PASS, (n, name)
        # the same identities directly on the computed table
        table = {str(p): r.bidegree for p, r in ctx.all_degrees().items()}
        perms = {str(p): p for p in enumerate_permutations(n)}
        for key, p in perms.items():
            inv = str(p.inverse())
            assert table[key].evaluate(1, 1) == table[inv].evaluate(1, 1)
            assert table[key] == table[inv].swap()
            assert table[key].evaluate(1, 1) == table[str(p.conjugate_by_w0())].evaluate(1, 1)
    table3 = {str(p): r.bidegree for p, r in contexts(cache_dir)[3].all_degrees().items()}
    d21 = BidegreePolynomial(DISPLAYED_BIDEGREES["21"])
    ab = BidegreePolynomial({(1, 1): 1})
    assert table3["213"] == table3["132"] == d21 * ab**2


def test_criterion_05_groebner_degeneration(record_property):
    record_property("criterion", "criterion 5: in_w(I_D) = I_D0 for n = 2, 3 (n = 3 within 5 minutes) and tau(I_D0) = I_E for n <= 4")
    for n in (2, 3):
        start = time.perf_counter()
        reports = run_degenerate(Context(n=n, budget_seconds=300))
        elapsed = time.perf_counter() - start
        assert statuses(reports)["degenerate:initial-forms"] == PASS, n
        if n == 3:
            assert elapsed < 300
    for n in (1, 2, 3, 4):
        tau = next(r for r in run_degenerate_tau_only(n))
        assert tau.status == PASS and tau.payload["idealEqual"] is True, n


def run_degenerate_tau_only(n):
    # the initial-forms half at n = 4 is the expensive stretch goal; skip it
    # with a tiny budget so only the tau comparison is exercised
    reports = run_degenerate(Context(n=n, budget_seconds=1e-9))
    return [r for r in reports if r.name == "degenerate:tau"]


def test_criterion_06_smooth_points(record_property):
    record_property("criterion", "criterion 6: Jacobian rank n^2-n at 25 central points per n in {2, 3, 4} on I_E and I_D0")
    for n in (2, 3, 4):
        (rep,) = run_smooth(Context(n=n, trials=25, seed=n))
        assert rep.status == PASS, rep.payload["failures"]
        assert rep.payload["trials"] == 25
        assert rep.payload["ranksSeen"] == [n * n - n]


def test_criterion_07_power_diagonal_rank(record_property):
    record_property("criterion", "criterion 7: power-diagonal rank <= n-1 on 100 samples per n in 2..5, witness of rank n")
    for n in (2, 3, 4, 5):
        (rep,) = run_tao(Context(n=n, trials=100, seed=n))
        assert rep.status == PASS, rep.payload
        assert rep.payload["applicable"] >= 100
        assert rep.payload["failures"] == []
        assert rep.payload["maxRank"] <= n - 1
        assert rep.payload["witnessRank"] == n


def test_criterion_08_dimensions(record_property):
    record_property("criterion", "criterion 8: dim in(I_E) = n^2+n and every component ideal has dimension n^2+n for n = 2, 3")
    for n in (2, 3):
        E = build_ideal(SchemeTag("E"), n)
        assert monomial_dimension(initial_ideal(buchberger(E))) == n * n + n
        for pi in enumerate_permutations(n):
            assert dimension(build_ideal(SchemeTag("Epi", pi), n)) == n * n + n, str(pi)


def test_criterion_09_conjecture_reports(cache_dir, record_property):
    record_property("criterion", "criterion 9: every n = 3 conjecture REPORT row carries matchesPaperGl3 = true")
    reports = run_conjectures(Context(n=3, cache_dir=cache_dir, trials=25))
    assert reports and all(r.status == REPORT for r in reports), statuses(reports)
    assert all(r.matches_paper_gl3 is True for r in reports)
    kinds = {r.name.split(":")[1] for r in reports}
    assert {"dimension", "degree", "membership", "closure-union"} <= kinds
    closure = {r.name.rsplit("=", 1)[1]: r.payload["degree"] for r in reports if "closure-union" in r.name}
    assert closure == {"123": 1, "213": 4, "132": 4, "312": 20, "231": 20, "321": 64}


def _n2_scheme_ideals():
    tags = [SchemeTag(k) for k in ("commuting", "D", "D0", "E")]
    tags += [SchemeTag("Dz", z=3)]
    tags += [SchemeTag(k, pi) for k in ("Epi", "closure") for pi in ("12", "21")]
    return [build_ideal(t, 2) for t in tags]


def test_criterion_10_engine_self_checks(record_property):
    record_property("criterion", "criterion 10: post-hoc S-pair checks, brute-force Hilbert oracle, canonicity, in_w containment")
    ideals = _n2_scheme_ideals()
    ideals += [build_ideal(SchemeTag(k), 3) for k in ("E", "D0", "commuting")]
    ideals += [build_ideal(SchemeTag("Epi", pi), 3) for pi in enumerate_permutations(3)]
    rng = random.Random(10)
    for I in ideals:
        gb = buchberger(I)
        assert is_groebner(gb.basis, GREVLEX), I.label
        assert ideal_contains(gb, I.generators), I.label
        if I.ring.nvars == 8:
            M = initial_ideal(gb)
            for grading in (None, "total"):
                grades = M.ring.bidegrees if grading is None else [(1, 0)] * M.ring.nvars
                series = series_from_kpolynomial(k_polynomial(M, grading), grades, 6)
                assert series == hilbert_function_bruteforce(M, grading, 6), I.label
            for _ in range(5):
                shuffled = list(I.generators)
                rng.shuffle(shuffled)
                assert buchberger(IdealSpec(tuple(shuffled), ring=I.ring)).basis == gb.basis
    for n in (2, 3):
        w = degeneration_weight(n)
        for kind in ("D", "commuting"):
            I = build_ideal(SchemeTag(kind), n)
            limit = buchberger(initial_forms_ideal(I, w))
            ring, checked = I.ring, 0
            while checked < 100:
                f = ring.zero()
                for g in I.generators:
                    c = rng.randint(-3, 3)
                    if c:
                        var = ring.gen(rng.randrange(ring.nvars)) if rng.random() < 0.5 else ring.one()
                        f = f + g * var * c
                if f.is_zero():
                    continue
                checked += 1
                assert ideal_member(weight_initial_form(f, w), limit), (kind, n)

