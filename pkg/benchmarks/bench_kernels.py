"""Time the construction and correction kernels, compiled vs interpreted.

Each backend runs in its own interpreter because the choice is made at
import time through MPGSD_DISABLE_JIT.

    python benchmarks/bench_kernels.py [--sizes 5x25,25x125,50x250] [--repeat 5]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
import mpgsd
from mpgsd import AcoParams, InstanceSpec, generate, greedy_solve, solve
from mpgsd import _kernels

sizes, repeat = json.loads(sys.argv[1]), int(sys.argv[2])
rows = []
for s, d in sizes:
    g = generate(InstanceSpec(s, d, "general", seed=1))
    args = (g.indptr, g.indices, g.values, g.supply_indices)
    tau = np.full((g.n_vertices, g.n_supply), 0.5)
    rand = np.random.default_rng(0).random((g.n_demand, 3))
    # warm-up compiles (or loads cached) kernels
    a = _kernels.grow(*args, tau, rand, 0.1, False)
    _kernels.correct_inplace(*args, a.copy())
    solve(g, AcoParams(ants=1, iterations=1, use_correction=True))

    def best_of(fn):
        times = []
        for _ in range(repeat):
            t = time.perf_counter()
            fn()
            times.append(time.perf_counter() - t)
        return min(times)

    rows.append({
        "size": f"{s}x{d}",
        "greedy": best_of(lambda: greedy_solve(g)),
        "ant": best_of(lambda: _kernels.grow(*args, tau, rand, 0.1, False)),
        "correct": best_of(lambda: _kernels.correct_inplace(*args, a.copy())),
        "colony": best_of(lambda: solve(g, AcoParams(ants=10, iterations=5,
                                                     use_correction=True))),
    })
json.dump({"numba": mpgsd.USING_NUMBA, "rows": rows}, sys.stdout)
"""


def run_backend(sizes, repeat, disable):
    env = dict(os.environ)
    if disable:
        env["MPGSD_DISABLE_JIT"] = "1"
    else:
        env.pop("MPGSD_DISABLE_JIT", None)
    out = subprocess.run([sys.executable, "-c", WORKER, json.dumps(sizes), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="5x25,25x125,50x250")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    sizes = [[int(x) for x in item.split("x")] for item in args.sizes.split(",")]

    jit = run_backend(sizes, args.repeat, disable=False)
    py = run_backend(sizes, args.repeat, disable=True)
    if not jit["numba"]:
        print("numba unavailable: both columns are interpreted", file=sys.stderr)

    cols = ("greedy", "ant", "correct", "colony")
    print(f"{'size':>8} {'kernel':>8} {'numba ms':>10} {'python ms':>10} {'speedup':>8}")
    for a, b in zip(jit["rows"], py["rows"]):
        for c in cols:
            print(f"{a['size']:>8} {c:>8} {a[c] * 1e3:10.3f} {b[c] * 1e3:10.3f} "
                  f"{b[c] / a[c]:8.1f}")
    print("colony = 10 ants x 5 iterations with correction")


if __name__ == "__main__":
    main()
