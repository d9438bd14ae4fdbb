"""The numba kernels and the pure-numpy fallback must agree exactly."""
import json
import os
import subprocess
import sys

import numpy as np
from hypothesis import given
from hypothesis.extra.numpy import arrays

from commvar import kernels

SCRIPT = r"""
import json, sys
import numpy as np
from commvar import kernels
rng = np.random.default_rng(2024)

def terms(table):
    return sorted([int(i), int(j), int(table[i, j])] for i, j in zip(*np.nonzero(table)))

out = {"backend": kernels.backend(), "cases": []}
for trial in range(40):
    nvars = int(rng.integers(1, 9))
    k = int(rng.integers(1, 8))
    gens = rng.integers(0, 3, size=(k, nvars)).astype(np.int64)
    gens = gens[gens.sum(axis=1) > 0]
    if gens.shape[0] == 0:
        continue
    split = rng.integers(0, 2, size=nvars)
    da, db = (1 - split).astype(np.int64), split.astype(np.int64)
    out["cases"].append({
        "mask": kernels.minimal_mask(gens).tolist(),
        "pivot": terms(kernels.kpoly_pivot(gens, da, db)),
        "incl": terms(kernels.kpoly_inclusion_exclusion(gens, da, db)),
        "codim": kernels.codimension_branch_and_bound(gens),
        "free": kernels.max_free_set_exhaustive(gens),
        "counts": kernels.standard_counts(gens, da, db, 5).tolist(),
    })
json.dump(out, sys.stdout)
"""


def _run(flag):
    env = dict(os.environ, COMMVAR_NUMBA=flag)
    proc = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True,
                          text=True, check=True)
    return json.loads(proc.stdout)


def test_backends_agree():
    fast, slow = _run("1"), _run("0")
    assert slow["backend"] == "numpy"
    assert fast["cases"] == slow["cases"]
    for case in fast["cases"]:
        assert case["pivot"] == case["incl"]


@given(arrays(np.int64, (5, 4), elements={"min_value": 0, "max_value": 3}))
def test_minimal_mask_versions_agree(gens):
    loops = kernels._minimal_mask_loops
    loops = getattr(loops, "py_func", loops)
    assert loops(gens).tolist() == kernels._minimal_mask_numpy(gens).tolist()


def test_minimalize_drops_multiples_and_duplicates():
    gens = np.array([[1, 0], [2, 0], [1, 0], [0, 1], [1, 1]], dtype=np.int64)
    assert kernels.minimalize(gens).tolist() == [[1, 0], [0, 1]]


def test_support_mask_limit():
    gens = np.ones((1, 63), dtype=np.int64)
    try:
        kernels.support_masks(gens)
    except ValueError:
        pass
    else:  # pragma: no cover
        raise AssertionError("expected a ValueError")
