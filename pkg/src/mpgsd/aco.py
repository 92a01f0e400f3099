"""Ant Colony System for maximum partitioning with supply and demand."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .construction import GrowState, candidates, greedy_solve
from .graph import ContractError, Partition, ProblemGraph, objective


@dataclass
class AcoParams:
    ants: int = 10
    iterations: int = 150
    p: float = 0.1
    phi: float = 0.9
    q0: float = 0.1
    seed: int = 0
    use_correction: bool = False

    def __post_init__(self):
        if self.ants < 1:
            raise ValueError("ants must be positive")
        if self.iterations < 0:
            raise ValueError("iterations must be nonnegative")
        for name in ("p", "phi"):
            val = getattr(self, name)
            if not 0.0 < val < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {val}")
        if not 0.0 <= self.q0 <= 1.0:
            raise ValueError(f"q0 must lie in [0, 1], got {self.q0}")


@dataclass
class AcoResult:
    best: Partition
    best_objective: int
    history: list = field(default_factory=list)
    solutions_generated: int = 0


def quality(g: ProblemGraph, pi: Partition) -> float:
    """1 / (total supply - satisfied demand + 1)."""
    return 1.0 / (g.total_supply - objective(g, pi) + 1)


def init_pheromone(g: ProblemGraph, greedy: Partition | None = None) -> np.ndarray:
    """Pheromone table of shape (n_vertices, n_supply) filled with the greedy quality.

    Rows of supply vertices exist for indexing convenience and are never read.
    """
    if greedy is None:
        greedy = greedy_solve(g)
    return np.full((g.n_vertices, g.n_supply), quality(g, greedy), dtype=np.float64)


def _pairs(g: ProblemGraph, pi: Partition):
    d = g.demand_indices
    s = pi.assignment[d]
    sel = s >= 0
    return d[sel], s[sel]


def local_update(tau: np.ndarray, g: ProblemGraph, pi: Partition, phi: float) -> None:
    v, s = _pairs(g, pi)
    tau[v, s] *= phi


def global_update(tau: np.ndarray, best: Partition, g: ProblemGraph, p: float) -> None:
    v, s = _pairs(g, best)
    tau[v, s] = (1.0 - p) * tau[v, s] + p * quality(g, best)


def transition_select(state: GrowState, g: ProblemGraph, tau: np.ndarray, s: int,
                      q: float, rng: np.random.Generator, q0: float = 0.1) -> int:
    """Choose the vertex that extends subgraph ``s``.

    With ``q > q0`` the candidate maximizing pheromone times demand wins
    (lowest index on ties); otherwise one is drawn with probability
    proportional to that product.
    """
    cand = sorted(candidates(state, g, s))
    if not cand:
        raise ContractError(f"subgraph {s} has no candidates")
    cand_arr = np.array(cand, dtype=np.int64)
    weights = tau[cand_arr, s] * -g.values[cand_arr].astype(np.float64)
    u = rng.random() if q <= q0 else 0.0
    return cand[_kernels.select_index(weights, float(q), float(q0), u)]


def solve(g: ProblemGraph, params: AcoParams | None = None) -> AcoResult:
    """Run the colony; the greedy solution is the initial incumbent.

    Each ant draws a block of uniforms (three per expansion step) from a
    PCG64 stream seeded with ``params.seed``.
    """
    params = params or AcoParams()
    rng = np.random.Generator(np.random.PCG64(params.seed))
    best = greedy_solve(g)
    tau = init_pheromone(g, best)
    best_obj = objective(g, best)
    history = []
    generated = 0
    n_steps = max(g.n_demand, 1)
    args = (g.indptr, g.indices, g.values, g.supply_indices)

    for _ in range(params.iterations):
        for _ant in range(params.ants):
            rand = rng.random((n_steps, 3))
            assign = _kernels.grow(*args, tau, rand, float(params.q0), False)
            if params.use_correction:
                _kernels.correct_inplace(*args, assign)
            pi = Partition(g, assign)
            local_update(tau, g, pi, params.phi)
            generated += 1
            obj = objective(g, pi)
            if obj > best_obj:
                best, best_obj = pi, obj
        global_update(tau, best, g, params.p)
        history.append(best_obj)

    return AcoResult(best, best_obj, history, generated)
