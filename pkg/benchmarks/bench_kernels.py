"""Time the monomial-ideal kernels under numba and under the numpy fallback.

Each backend runs in its own interpreter because the choice is fixed at import
time by ``COMMVAR_NUMBA``.  The workload is the set of initial ideals of the
upper-upper scheme and its components, plus a batch of random monomial ideals.

    python3 benchmarks/bench_kernels.py [--repeats 5] [--n 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from commvar import kernels
from commvar.groebner import buchberger, initial_ideal
from commvar.hilbert import monomial_array
from commvar.permlab import enumerate_permutations
from commvar.schemes import SchemeTag, build_ideal

n, repeats = int(sys.argv[1]), int(sys.argv[2])
tags = [SchemeTag("E")] + [SchemeTag("Epi", p) for p in enumerate_permutations(n)]
workload = []
for tag in tags:
    M = initial_ideal(buchberger(build_ideal(tag, n)))
    gens = monomial_array(M)
    grades = np.array(M.ring.bidegrees, dtype=np.int64)
    workload.append((gens, grades[:, 0].copy(), grades[:, 1].copy()))
rng = np.random.default_rng(0)
for _ in range(200):
    gens = rng.integers(0, 3, size=(int(rng.integers(2, 9)), 10)).astype(np.int64)
    gens = gens[gens.sum(axis=1) > 0]
    split = rng.integers(0, 2, size=10).astype(np.int64)
    workload.append((gens, 1 - split, split))

def run_once():
    for gens, da, db in workload:
        kernels.kpoly_pivot(gens, da, db)
        kernels.codimension_branch_and_bound(gens)
        kernels.standard_counts(gens, da, db, 4)

start = time.perf_counter()
run_once()
first = time.perf_counter() - start
times = []
for _ in range(repeats):
    start = time.perf_counter()
    run_once()
    times.append(time.perf_counter() - start)
json.dump({"backend": kernels.backend(), "first": first, "best": min(times),
           "ideals": len(workload)}, sys.stdout)
"""


def measure(flag: str, n: int, repeats: int) -> dict:
    env = dict(os.environ, COMMVAR_NUMBA=flag)
    proc = subprocess.run([sys.executable, "-c", WORKER, str(n), str(repeats)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args(argv)
    rows = [measure(flag, args.n, args.repeats) for flag in ("1", "0")]
    print(f"{'backend':<8} {'ideals':>6} {'first run (s)':>14} {'best run (s)':>13}")
    for r in rows:
        print(f"{r['backend']:<8} {r['ideals']:>6} {r['first']:>14.4f} {r['best']:>13.4f}")
    fast, slow = rows
    print(f"speedup after warm-up: {slow['best'] / fast['best']:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
