"""Error statistics over size classes and convergence traces."""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .aco import AcoParams, solve
from .construction import greedy_solve
from .graph import IntegrityError, ProblemGraph, objective
from .instances import InstanceSpec, generate

ALGORITHMS = ("greedy", "aco", "aco-c")


def normalized_error(optimal: int, found: int) -> float:
    """(optimal - found) / optimal * 100."""
    if optimal <= 0:
        raise ValueError("optimal must be positive")
    if found < 0:
        raise ValueError("found must be nonnegative")
    if found > optimal:
        raise IntegrityError(f"found {found} exceeds optimum {optimal}")
    return (optimal - found) / optimal * 100.0


@dataclass
class RunStats:
    size_label: str
    algo: str
    errors: list = field(default_factory=list)

    @property
    def avg(self) -> float:
        return float(np.mean(self.errors)) if self.errors else 0.0

    @property
    def stdev(self) -> float:
        # population standard deviation
        return float(np.std(self.errors)) if self.errors else 0.0

    @property
    def max(self) -> float:
        return float(np.max(self.errors)) if self.errors else 0.0

    @property
    def hits(self) -> int:
        return sum(1 for e in self.errors if e == 0.0)


def run_algorithm(g: ProblemGraph, algo: str, params: AcoParams) -> int:
    if algo == "greedy":
        return objective(g, greedy_solve(g))
    if algo == "aco":
        return solve(g, replace(params, use_correction=False)).best_objective
    if algo == "aco-c":
        return solve(g, replace(params, use_correction=True)).best_objective
    raise ValueError(f"unknown algorithm {algo!r}")


def _instance_errors(job):
    spec, algos, params = job
    g = generate(spec)
    run_params = replace(params, seed=spec.seed)
    return [normalized_error(g.optimum, run_algorithm(g, a, run_params)) for a in algos]


def run_class(template: InstanceSpec, instances: int = 40, algorithms=ALGORITHMS,
              params: AcoParams | None = None, seed_base: int = 0,
              workers: int = 1) -> dict[str, RunStats]:
    """Generate ``instances`` instances with seeds ``seed_base + i`` and score each algorithm.

    The instance seed doubles as the ACO run seed.  Returns one RunStats per
    algorithm, ordered by instance index regardless of ``workers``.
    """
    params = params or AcoParams()
    algorithms = tuple(algorithms)
    jobs = [(replace(template, seed=seed_base + i), algorithms, params)
            for i in range(instances)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_instance_errors, jobs))
    else:
        rows = [_instance_errors(j) for j in jobs]
    out = {}
    for k, algo in enumerate(algorithms):
        out[algo] = RunStats(template.label, algo, [r[k] for r in rows])
    return out


@dataclass
class Trace:
    iteration: np.ndarray
    min: np.ndarray
    avg: np.ndarray
    max: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iteration", "min", "avg", "max"])
        for row in zip(self.iteration, self.min, self.avg, self.max):
            w.writerow([int(row[0])] + [f"{x:.6f}" for x in row[1:]])
        return buf.getvalue()


def convergence_trace(g: ProblemGraph, params: AcoParams, runs: int = 20,
                      seed_base: int = 0) -> Trace:
    """Per-iteration min/avg/max best-so-far error (percent) over seeded runs."""
    if g.optimum is None:
        raise ValueError("instance has no known optimum")
    series = []
    for r in range(runs):
        res = solve(g, replace(params, seed=seed_base + r))
        series.append([normalized_error(g.optimum, h) for h in res.history])
    arr = np.array(series, dtype=np.float64).reshape(runs, params.iterations)
    return Trace(np.arange(1, params.iterations + 1), arr.min(axis=0),
                 arr.mean(axis=0), arr.max(axis=0))


def stats_csv(rows) -> str:
    """CSV text for RunStats rows (plus kind and seed_base columns)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["size", "algo", "avg", "stdev", "max", "hits", "kind", "seed_base"])
    for kind, seed_base, st in rows:
        w.writerow([st.size_label, st.algo, f"{st.avg:.4f}", f"{st.stdev:.4f}",
                    f"{st.max:.4f}", st.hits, kind, seed_base])
    return buf.getvalue()
