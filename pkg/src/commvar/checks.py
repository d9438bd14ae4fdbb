"""Verification checks behind the command-line tool.

Every check returns ``CheckReport`` values.  Theorem-backed checks use
PASS/FAIL; conjecture-backed ones use REPORT with ``matches_paper_gl3``; a
computation that ran out of its time budget yields MISSING.
"""
from __future__ import annotations

import hashlib
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from .cache import GBCache
from .groebner import BudgetExceeded, ideal_equal, initial_forms_ideal, initial_ideal
from .hilbert import BidegreePolynomial, bidegree, degree, monomial_dimension
from .permlab import (
    Permutation,
    bruhat_lower_interval,
    enumerate_partial_perms,
    enumerate_permutations,
    fiber_dimension,
    orbit_dimension,
    parse_perm,
    star_splits,
    stratum_dimension,
    table_order,
)
from .polyring import GREVLEX, LEX, TermOrder
from .published import published_bidegree, published_degree
from .schemes import (
    SchemeTag,
    build_ideal,
    degeneration_weight,
    diag_lemma_check,
    jacobian_rank,
    random_d_point,
    random_params,
    sample_point,
    tao_point_witness,
    tao_rank_check,
    tau_point,
    tau_substitute,
    vanishes_at,
)

PASS, FAIL, REPORT, MISSING = "PASS", "FAIL", "REPORT", "MISSING"
ORDERS = {"grevlex": GREVLEX, "lex": LEX}


class UsageError(ValueError):
    """Arguments outside a command's supported range."""


@dataclass(frozen=True)
class CheckReport:
    name: str
    status: str
    payload: dict
    paper_expectation: Any = None
    elapsed_ms: float | None = None
    matches_paper_gl3: bool | None = None


def rng_for(seed: int, check: str, trial: int) -> random.Random:
    """Independent stream per (seed, check, trial); no shared global state."""
    digest = hashlib.sha256(f"{seed}/{check}/{trial}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


# ---------------------------------------------------------------------------
# degree computations, one task per permutation


@dataclass(frozen=True)
class DegreeResult:
    pi: Permutation
    degree: int | None
    bidegree: BidegreePolynomial | None
    dimension: int | None
    elapsed_ms: float

    @property
    def missing(self) -> bool:
        return self.degree is None


def degree_task(pi_text: str, order_name: str, cache_dir: str | None,
                budget_seconds: float | None) -> DegreeResult:
    pi = parse_perm(pi_text)
    start = time.perf_counter()
    I = build_ideal(SchemeTag("Epi", pi), pi.n)
    try:
        gb = GBCache(cache_dir).get(I, ORDERS[order_name], budget_seconds)
    except BudgetExceeded:
        return DegreeResult(pi, None, None, None, (time.perf_counter() - start) * 1000)
    M = initial_ideal(gb)
    bd = bidegree(I, gb=gb)
    return DegreeResult(pi, bd.evaluate(1, 1), bd, monomial_dimension(M),
                        (time.perf_counter() - start) * 1000)


@dataclass
class Context:
    n: int
    seed: int = 0
    trials: int = 25
    order: str = "grevlex"
    threads: int = 1
    cache_dir: str | None = None
    budget_seconds: float | None = 600.0
    pi: Permutation | None = None
    orientation: str = "standard"
    _degrees: dict = field(default_factory=dict)

    @property
    def term_order(self) -> TermOrder:
        return ORDERS[self.order]

    def cache(self) -> GBCache:
        return GBCache(self.cache_dir)

    def degrees(self, perms) -> dict[Permutation, DegreeResult]:
        todo = sorted({p for p in perms if p not in self._degrees})
        args = [(str(p), self.order, self.cache_dir, self.budget_seconds) for p in todo]
        if self.threads > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(degree_task, *zip(*args)))
        else:
            results = [degree_task(*a) for a in args]
        for p, r in zip(todo, results):
            self._degrees[p] = r
        return {p: self._degrees[p] for p in sorted(perms, key=table_order)}

    def all_degrees(self, n: int | None = None) -> dict[Permutation, DegreeResult]:
        return self.degrees(enumerate_permutations(self.n if n is None else n))


def _timed(fn: Callable[[], CheckReport]) -> CheckReport:
    start = time.perf_counter()
    rep = fn()
    return CheckReport(rep.name, rep.status, rep.payload, rep.paper_expectation,
                       (time.perf_counter() - start) * 1000, rep.matches_paper_gl3)


def _require(cond: bool, message: str):
    if not cond:
        raise UsageError(message)


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# degrees


def run_degrees(ctx: Context) -> list[CheckReport]:
    _require(1 <= ctx.n <= 4, "degrees needs 1 <= n <= 4")
    perms = [ctx.pi] if ctx.pi else enumerate_permutations(ctx.n)
    if ctx.pi:
        _require(ctx.pi.n == ctx.n, "--pi must be a permutation of size n")
    out = []
    for pi, r in ctx.degrees(perms).items():
        name = f"degrees:pi={pi}"
        if r.missing:
            out.append(CheckReport(name, MISSING, {"pi": str(pi), "reason": "budget exceeded"},
                                   elapsed_ms=r.elapsed_ms))
            continue
        expected_bd = published_bidegree(pi) if pi.n <= 3 else None
        payload = {"pi": str(pi), "degree": r.degree, "bidegree": r.bidegree, "dimension": r.dimension}
        expectation, matches = None, None
        if expected_bd is not None:
            expectation = {"degree": expected_bd.evaluate(1, 1), "bidegree": expected_bd}
            matches = r.bidegree == expected_bd
        out.append(CheckReport(name, REPORT, payload, expectation, r.elapsed_ms, matches))
    return out


# ---------------------------------------------------------------------------
# identities among the degrees


def _bidegree_table(ctx: Context, n: int) -> dict[Permutation, BidegreePolynomial] | None:
    res = ctx.all_degrees(n)
    if any(r.missing for r in res.values()):
        return None
    return {p: r.bidegree for p, r in res.items()}


def run_identities(ctx: Context) -> list[CheckReport]:
    n = ctx.n
    _require(1 <= n <= 4, "identities needs 1 <= n <= 4")
    table = _bidegree_table(ctx, n)
    names = ["sum-degrees", "sum-bidegrees", "star-multiplicativity", "inverse-symmetry",
             "w0-conjugation-symmetry", "inverse-swap", "w0-inverse-invariance"]
    if table is None:
        return [CheckReport(f"identities:{x}", MISSING, {"reason": "degree computation exceeded budget"})
                for x in names]
    N = n * n - n
    AB = BidegreePolynomial({(1, 0): 1, (0, 1): 1})
    degs = {p: b.evaluate(1, 1) for p, b in table.items()}
    w0 = Permutation.longest(n)
    out = []

    total = sum(degs.values())
    out.append(CheckReport("identities:sum-degrees", _verdict(total == 2**N),
                           {"sum": total}, 2**N))
    bsum = BidegreePolynomial({})
    for b in table.values():
        bsum = bsum + b
    out.append(CheckReport("identities:sum-bidegrees", _verdict(bsum == AB**N),
                           {"sum": bsum}, AB**N))

    split_rows, split_ok = [], True
    small: dict[int, dict] = {}
    for pi in table:
        for k, left, right in star_splits(pi):
            for m in (k, n - k):
                if m not in small:
                    small[m] = _bidegree_table(ctx, m) if m < n else table
            if small[k] is None or small[n - k] is None:
                return out + [CheckReport("identities:star-multiplicativity", MISSING,
                                          {"reason": "degree computation exceeded budget"})]
            lhs = table[pi]
            rhs = small[k][left] * small[n - k][right] * BidegreePolynomial({(1, 1): 1}) ** (k * (n - k))
            split_ok &= lhs == rhs
            split_rows.append({"pi": str(pi), "k": k, "left": str(left), "right": str(right),
                               "holds": lhs == rhs})
    out.append(CheckReport("identities:star-multiplicativity", _verdict(split_ok),
                           {"splits": split_rows}))

    def symmetric(label, lhs_of, rhs_of):
        bad = [str(p) for p in table if lhs_of(p) != rhs_of(p)]
        out.append(CheckReport(f"identities:{label}", _verdict(not bad),
                               {"checked": len(table), "violations": bad}))

    symmetric("inverse-symmetry", lambda p: degs[p], lambda p: degs[p.inverse()])
    symmetric("w0-conjugation-symmetry", lambda p: degs[p],
              lambda p: degs[w0.compose(p).compose(w0)])
    symmetric("inverse-swap", lambda p: table[p], lambda p: table[p.inverse()].swap())
    symmetric("w0-inverse-invariance", lambda p: table[p],
              lambda p: table[w0.compose(p.inverse()).compose(w0)])
    return out


# ---------------------------------------------------------------------------
# Groebner degeneration


def run_degenerate(ctx: Context) -> list[CheckReport]:
    n = ctx.n
    _require(1 <= n <= 4, "degenerate needs 1 <= n <= 4")
    out = []

    def initial_forms():
        D = build_ideal(SchemeTag("D"), n)
        D0 = build_ideal(SchemeTag("D0"), n, ctx.orientation)
        try:
            limit = initial_forms_ideal(D, degeneration_weight(n, ctx.orientation),
                                        budget_seconds=ctx.budget_seconds)
            equal = ideal_equal(limit, D0, ctx.term_order)
        except BudgetExceeded:
            return CheckReport("degenerate:initial-forms", MISSING, {"reason": "budget exceeded"})
        payload = {"orientation": ctx.orientation, "generators": len(limit.generators),
                   "equalsLimitEquations": equal}
        if ctx.orientation == "standard":
            return CheckReport("degenerate:initial-forms", _verdict(equal), payload, True)
        # the flipped weight gives the w0-conjugated limit; informational only
        standard = build_ideal(SchemeTag("D0"), n)
        try:
            payload["equalsStandardLimit"] = ideal_equal(limit, standard, ctx.term_order)
        except BudgetExceeded:
            payload["equalsStandardLimit"] = None
        return CheckReport("degenerate:initial-forms", REPORT, payload)

    def tau():
        D0 = build_ideal(SchemeTag("D0"), n)
        E = build_ideal(SchemeTag("E"), n)
        image = tau_substitute(D0, n)
        same = {g.content_normalized() for g in image.generators} == \
               {g.content_normalized() for g in E.generators}
        if same:  # identical generating sets already give equal ideals
            equal = True
        else:
            try:
                equal = ideal_equal(image, E, ctx.term_order, budget_seconds=ctx.budget_seconds)
            except BudgetExceeded:
                equal = None
        ok = equal is True
        return CheckReport("degenerate:tau", _verdict(ok),
                           {"sameGeneratorsUpToSign": same, "idealEqual": equal}, True)

    out.append(_timed(initial_forms))
    out.append(_timed(tau))
    return out


# ---------------------------------------------------------------------------
# smooth points


def run_smooth(ctx: Context) -> list[CheckReport]:
    n = ctx.n
    _require(1 <= n <= 4, "smooth needs 1 <= n <= 4")

    def check():
        E = build_ideal(SchemeTag("E"), n)
        D0 = build_ideal(SchemeTag("D0"), n)
        perms = enumerate_permutations(n)
        target = n * n - n
        failures, ranks = [], set()
        for k in range(ctx.trials):
            rng = rng_for(ctx.seed, "smooth", k)
            pi = perms[k % len(perms)] if k < len(perms) else rng.choice(perms)
            params = random_params(pi, rng, unipotent=False)
            point = sample_point(params)
            r_e = jacobian_rank(E, point)
            r_d = jacobian_rank(D0, tau_point(*point))
            ranks.update((r_e, r_d))
            if r_e != target or r_d != target:
                failures.append({"trial": k, "pi": str(pi), "rankE": r_e, "rankD0": r_d})
        payload = {"trials": ctx.trials, "expectedRank": target, "ranksSeen": sorted(ranks),
                   "failures": failures}
        return CheckReport("smooth:jacobian-rank", _verdict(not failures), payload, target)

    return [_timed(check)]


# ---------------------------------------------------------------------------
# rank bound for diagonal commutators


def run_tao(ctx: Context) -> list[CheckReport]:
    n = ctx.n
    _require(2 <= n <= 5, "tao needs 2 <= n <= 5")

    def check():
        applicable, failures, max_rank, attempts = 0, [], 0, 0
        while applicable < ctx.trials and attempts < 20 * max(ctx.trials, 1):
            rng = rng_for(ctx.seed, "tao", attempts)
            attempts += 1
            X, Y = random_d_point(n, rng)
            rep = tao_rank_check(X, Y)
            if not rep.applies:
                continue
            applicable += 1
            max_rank = max(max_rank, rep.rank)
            if not rep.passed:
                failures.append({"attempt": attempts - 1, "rank": rep.rank})
        witness_rank = tao_rank_check(*tao_point_witness(n)).rank
        ok = not failures and applicable >= ctx.trials and witness_rank == n
        payload = {"applicable": applicable, "attempts": attempts, "maxRank": max_rank,
                   "bound": n - 1, "failures": failures, "witnessRank": witness_rank}
        return CheckReport("tao:power-diagonal-rank", _verdict(ok), payload, {"bound": n - 1})

    return [_timed(check)]


# ---------------------------------------------------------------------------
# orbit strata


def run_strata(ctx: Context) -> list[CheckReport]:
    n = ctx.n
    _require(1 <= n <= 5, "strata needs 1 <= n <= 5")
    out, bad = [], []
    for p in enumerate_partial_perms(n):
        orbit, fiber = orbit_dimension(p), fiber_dimension(p)
        stratum = stratum_dimension(p, n)
        codim = 2 * n * n - stratum
        ok = orbit + fiber == stratum and codim >= n * n - n and \
            (codim == n * n - n) == p.is_permutation()
        if not ok:
            bad.append(str(p))
        out.append(CheckReport(f"strata:{p}", _verdict(ok),
                               {"matrix": str(p), "rank": p.rank, "orbitDimension": orbit,
                                "fiberDimension": fiber, "stratumDimension": stratum,
                                "codimension": codim}))
    out.append(CheckReport("strata:codimension-bound", _verdict(not bad),
                           {"strata": len(out), "minCodimension": n * n - n, "violations": bad}))
    return out


# ---------------------------------------------------------------------------
# conjecture reports


def run_conjectures(ctx: Context) -> list[CheckReport]:
    n = ctx.n
    _require(1 <= n <= 3, "conjectures needs 1 <= n <= 3")
    perms = [ctx.pi] if ctx.pi else sorted(enumerate_permutations(n), key=table_order)
    res = ctx.all_degrees(n)
    out = []
    for pi in perms:
        r = res[pi]
        tag = f"pi={pi}"
        if r.missing:
            out.append(CheckReport(f"conjectures:{tag}", MISSING, {"reason": "budget exceeded"}))
            continue
        out.append(CheckReport(f"conjectures:dimension:{tag}", REPORT,
                               {"dimension": r.dimension}, n * n + n, r.elapsed_ms,
                               r.dimension == n * n + n))
        expected = published_degree(pi)
        out.append(CheckReport(f"conjectures:degree:{tag}", REPORT, {"degree": r.degree},
                               expected, None, r.degree == expected))
        out.append(_timed(lambda pi=pi: _membership(ctx, pi)))
        out.append(_timed(lambda pi=pi: _closure_union(ctx, pi, res)))
    if not ctx.pi:
        out.append(_timed(lambda: _commuting_limit(ctx)))
    return out


def _membership(ctx: Context, pi: Permutation) -> CheckReport:
    n = pi.n
    I = build_ideal(SchemeTag("Epi", pi), n)
    failures = []
    for k in range(ctx.trials):
        params = random_params(pi, rng_for(ctx.seed, f"membership:{pi}", k))
        X, Y = sample_point(params)
        if not (vanishes_at(I, X, Y) and diag_lemma_check(X, Y, pi)):
            failures.append(k)
    return CheckReport(f"conjectures:membership:pi={pi}", REPORT,
                       {"points": ctx.trials, "failures": failures}, {"failures": []},
                       matches_paper_gl3=not failures)


def _closure_union(ctx: Context, pi: Permutation, res) -> CheckReport:
    n = pi.n
    I = build_ideal(SchemeTag("closure", pi), n)
    below = bruhat_lower_interval(pi)
    try:
        gb = ctx.cache().get(I, ctx.term_order, ctx.budget_seconds)
    except BudgetExceeded:
        return CheckReport(f"conjectures:closure-union:pi={pi}", MISSING, {"reason": "budget exceeded"})
    d = degree(I, gb=gb)
    expected = sum(published_degree(rho) for rho in below)
    computed_sum = sum(res[rho].degree for rho in below)
    return CheckReport(f"conjectures:closure-union:pi={pi}", REPORT,
                       {"degree": d, "bruhatInterval": [str(r) for r in below],
                        "sumOfComponentDegrees": computed_sum},
                       expected, matches_paper_gl3=d == expected == computed_sum)


def _commuting_limit(ctx: Context) -> CheckReport:
    """The commuting ideal degenerates, after tau, onto the w0 component ideal."""
    n = ctx.n
    I = build_ideal(SchemeTag("commuting"), n)
    w0 = Permutation.longest(n)
    try:
        gb = ctx.cache().get(I, ctx.term_order, ctx.budget_seconds)
        limit = tau_substitute(initial_forms_ideal(I, degeneration_weight(n),
                                                   budget_seconds=ctx.budget_seconds), n)
        equal = ideal_equal(limit, build_ideal(SchemeTag("Epi", w0), n), ctx.term_order)
    except BudgetExceeded:
        return CheckReport("conjectures:commuting-limit", MISSING, {"reason": "budget exceeded"})
    d = degree(I, gb=gb)
    expected = published_degree(w0)
    return CheckReport("conjectures:commuting-limit", REPORT,
                       {"commutingDegree": d, "limitEqualsComponentIdeal": equal},
                       {"commutingDegree": expected, "limitEqualsComponentIdeal": True},
                       matches_paper_gl3=equal and d == expected)


COMMANDS = {
    "degrees": run_degrees,
    "identities": run_identities,
    "degenerate": run_degenerate,
    "smooth": run_smooth,
    "tao": run_tao,
    "strata": run_strata,
    "conjectures": run_conjectures,
}


def run_all(ctx: Context) -> list[CheckReport]:
    out = []
    for name, fn in COMMANDS.items():
        if name == "tao" and ctx.n < 2:
            continue
        if name == "conjectures" and ctx.n > 3:
            continue
        out.extend(fn(ctx))
    return out
