"""Exhaustive branch-and-bound for small instances."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import UNASSIGNED, Partition, ProblemGraph


@dataclass
class ExactResult:
    status: str  # "optimal" or "undecided"
    optimum: Optional[int]
    witness: Optional[Partition]
    nodes: int

    @property
    def decided(self) -> bool:
        return self.status == "optimal"


class _BudgetExceeded(Exception):
    pass


def exact_optimum(g: ProblemGraph, budget: int = 2_000_000) -> ExactResult:
    """Maximum satisfied demand over all feasible partitions.

    The search grows subgraphs one adjacent vertex at a time.  At each node
    the first open vertex (by decreasing demand, then index) that fits an
    adjacent subgraph is branched on: one branch per such subgraph, plus a
    branch forbidding it from all of them.  Every connected partition is
    reached by exactly one path.  Exceeding ``budget`` node expansions
    yields an ``undecided`` result.
    """
    nv, n = g.n_vertices, g.n_supply
    values = g.values.tolist()
    nbrs = [g.neighbors(v).tolist() for v in range(nv)]
    order = sorted(g.demand_indices.tolist(), key=lambda v: (values[v], v))
    assign = g.root_of.tolist()
    surplus = [values[s] for s in g.supply_indices.tolist()]
    forbidden = [0] * nv  # bitmask of subgraphs a vertex may no longer join
    cap = min(g.total_supply, g.total_demand)

    best = {"obj": 0, "assign": list(assign)}
    nodes = 0

    def options(v):
        need = -values[v]
        opts = 0
        for w in nbrs[v]:
            t = assign[w]
            if t >= 0 and not (forbidden[v] >> t) & 1 and need <= surplus[t]:
                opts |= 1 << t
        return opts

    def open_bound():
        # demand of vertices that some non-forbidden subgraph could still take
        full = (1 << n) - 1
        return sum(-values[v] for v in order
                   if assign[v] == UNASSIGNED and forbidden[v] != full)

    def search(current):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetExceeded
        if current > best["obj"]:
            best["obj"] = current
            best["assign"] = list(assign)
            if current == cap:
                return True
        bound = current + min(open_bound(), sum(surplus))
        if bound <= best["obj"]:
            return False
        for v in order:
            if assign[v] != UNASSIGNED:
                continue
            opts = options(v)
            if not opts:
                continue
            need = -values[v]
            for t in range(n):
                if (opts >> t) & 1:
                    assign[v] = t
                    surplus[t] -= need
                    stop = search(current + need)
                    surplus[t] += need
                    assign[v] = UNASSIGNED
                    if stop:
                        return True
            saved = forbidden[v]
            forbidden[v] |= opts
            stop = search(current)
            forbidden[v] = saved
            return stop
        return False

    try:
        search(0)
    except _BudgetExceeded:
        return ExactResult("undecided", None, None, nodes)
    witness = Partition(g, np.array(best["assign"], dtype=np.int64))
    return ExactResult("optimal", best["obj"], witness, nodes)
