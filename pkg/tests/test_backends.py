"""Compiled and interpreted kernels must produce identical results."""
import json
import os
import subprocess
import sys

import pytest

from mpgsd import USING_NUMBA

SCRIPT = r"""
import json, sys
import mpgsd
from mpgsd import AcoParams, InstanceSpec, correct, generate, greedy_solve, solve
out = {"numba": mpgsd.USING_NUMBA, "cases": []}
for s, d, kind, seed in [(2, 8, "tree", 1), (3, 12, "general", 2), (5, 25, "general", 3)]:
    g = generate(InstanceSpec(s, d, kind, seed))
    gr = greedy_solve(g)
    res = solve(g, AcoParams(ants=3, iterations=4, seed=seed, use_correction=True))
    plain = solve(g, AcoParams(ants=3, iterations=4, seed=seed))
    out["cases"].append({
        "greedy": gr.assignment.tolist(),
        "corrected": correct(g, gr).assignment.tolist(),
        "aco_c": [res.best.assignment.tolist(), res.history],
        "aco": [plain.best.assignment.tolist(), plain.history],
    })
json.dump(out, sys.stdout)
"""


def _run(disable):
    env = dict(os.environ)
    if disable:
        env["MPGSD_DISABLE_JIT"] = "1"
    else:
        env.pop("MPGSD_DISABLE_JIT", None)
    proc = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True,
                          text=True, check=True, timeout=600)
    return json.loads(proc.stdout)


@pytest.mark.skipif(not USING_NUMBA, reason="numba not active")
def test_jit_and_fallback_agree():
    compiled = _run(False)
    interpreted = _run(True)
    assert compiled["numba"] is True and interpreted["numba"] is False
    assert compiled["cases"] == interpreted["cases"]
