"""Incremental subgraph growth and the deterministic greedy algorithm."""
from __future__ import annotations

import numpy as np

from . import _kernels
from .graph import (ContractError, InvalidInstanceError, Partition,
                    ProblemGraph)

_NO_TAU = np.ones((1, 1), dtype=np.float64)
_NO_RAND = np.zeros((1, 3), dtype=np.float64)


def neighbors(g: ProblemGraph, v: int) -> set[int]:
    if not 0 <= v < g.n_vertices:
        raise ContractError(f"vertex {v} out of range")
    return {int(u) for u in g.neighbors(v)}


class GrowState:
    """Partial solution plus the bookkeeping needed to extend it.

    ``frontier[i]`` may contain stale entries (vertices assigned elsewhere
    since they were added); :func:`candidates` filters them on read.
    """

    def __init__(self, partial: Partition, surplus: np.ndarray, frontier: list[set[int]],
                 assigned_mask: np.ndarray):
        self.partial = partial
        self.surplus = surplus
        self.frontier = frontier
        self.assigned_mask = assigned_mask

    def copy(self) -> "GrowState":
        return GrowState(self.partial.copy(), self.surplus.copy(),
                         [set(f) for f in self.frontier], self.assigned_mask.copy())


def init_state(g: ProblemGraph) -> GrowState:
    if g.n_supply == 0:
        raise InvalidInstanceError("graph has no supply vertex")
    partial = Partition.empty(g)
    surplus = g.values[g.supply_indices].astype(np.int64)
    frontier = [{int(u) for u in g.neighbors(s) if g.values[u] < 0}
                for s in g.supply_indices]
    return GrowState(partial, surplus, frontier, g.values > 0)


def candidates(state: GrowState, g: ProblemGraph, i: int) -> set[int]:
    """Unassigned frontier vertices of subgraph ``i`` whose demand fits its surplus."""
    cap = state.surplus[i]
    return {u for u in state.frontier[i]
            if not state.assigned_mask[u] and -g.values[u] <= cap}


def extend(state: GrowState, g: ProblemGraph, i: int, v: int) -> GrowState:
    """Assign ``v`` to subgraph ``i`` in place and return the state."""
    if (v not in state.frontier[i] or state.assigned_mask[v]
            or -g.values[v] > state.surplus[i]):
        raise ContractError(f"vertex {v} is not a candidate of subgraph {i}")
    state.partial.assignment[v] = i
    state.assigned_mask[v] = True
    state.surplus[i] += g.values[v]
    for f in state.frontier:
        f.discard(v)
    state.frontier[i].update(int(u) for u in g.neighbors(v)
                             if g.values[u] < 0 and not state.assigned_mask[u])
    return state


def grow_assignment(g: ProblemGraph, tau: np.ndarray | None = None,
                    rand: np.ndarray | None = None, q0: float = 0.0,
                    greedy: bool = True) -> np.ndarray:
    if g.n_supply == 0:
        raise InvalidInstanceError("graph has no supply vertex")
    return _kernels.grow(g.indptr, g.indices, g.values, g.supply_indices,
                         _NO_TAU if tau is None else tau,
                         _NO_RAND if rand is None else rand, float(q0), greedy)


def greedy_solve(g: ProblemGraph) -> Partition:
    """Expand the subgraph with the largest surplus by its largest-demand candidate.

    Ties resolve to the lowest subgraph index, then the lowest vertex index.
    """
    return Partition(g, grow_assignment(g))
