"""Local-search correction of complete solutions.

Three move types are considered, in this order:

* insert   - assign an unassigned demand vertex to an adjacent subgraph
             with enough surplus;
* transfer - move an assigned demand vertex to an adjacent subgraph, keeping
             its old subgraph connected, when this enables an insert;
* swap     - exchange two demand vertices between two subgraphs, keeping
             both connected, when this enables an insert.

Transfers and swaps are zero-gain on their own and only count as moves
together with the best insert they enable.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .graph import UNASSIGNED, Partition, ProblemGraph, is_connected_set


@dataclass(frozen=True)
class Move:
    kind: str  # "insert", "transfer" or "swap"
    vertex: int
    target: int
    delta: int
    partner: Optional[int] = None  # swap: the vertex coming back the other way
    insert_vertex: Optional[int] = None
    insert_target: Optional[int] = None

    def apply(self, pi: Partition) -> Partition:
        out = pi.copy()
        a = out.assignment
        if self.kind == "insert":
            a[self.vertex] = self.target
            return out
        source = a[self.vertex]
        a[self.vertex] = self.target
        if self.kind == "swap":
            a[self.partner] = source
        a[self.insert_vertex] = self.insert_target
        return out


def correct(g: ProblemGraph, pi: Partition) -> Partition:
    """Return a copy of ``pi`` improved until no move applies."""
    out = pi.copy()
    _kernels.correct_inplace(g.indptr, g.indices, g.values, g.supply_indices,
                             out.assignment)
    return out


def _surpluses(g: ProblemGraph, assign: np.ndarray) -> np.ndarray:
    sur = np.zeros(g.n_supply, dtype=np.int64)
    mask = assign >= 0
    np.add.at(sur, assign[mask], g.values[mask])
    return sur


def _enabled_insert(g, assign, sur, subgraphs):
    """Best insert into any of ``subgraphs`` as (vertex, subgraph) or None."""
    best = None
    for u in np.flatnonzero(assign == UNASSIGNED):
        du = -int(g.values[u])
        if best is not None and du <= best[2]:
            continue
        adj = set(assign[g.neighbors(u)].tolist())
        for t in subgraphs:
            if t in adj and du <= sur[t]:
                best = (int(u), int(t), du)
                break
    return best


def improving_moves(g: ProblemGraph, pi: Partition) -> list[Move]:
    """Every improving move available from ``pi`` with its exact objective delta.

    Straightforward enumeration; meant for checking and small instances.
    """
    assign = pi.assignment
    sur = _surpluses(g, assign)
    moves: list[Move] = []

    unassigned = np.flatnonzero(assign == UNASSIGNED)
    for u in unassigned:
        du = -int(g.values[u])
        for t in sorted(set(assign[g.neighbors(u)].tolist()) - {UNASSIGNED}):
            if du <= sur[t]:
                moves.append(Move("insert", int(u), int(t), du))
    if unassigned.size == 0:
        return moves

    for v in g.demand_indices:
        s = int(assign[v])
        if s == UNASSIGNED:
            continue
        dv = -int(g.values[v])
        rest = np.flatnonzero(assign == s)
        rest = rest[rest != v]
        if not is_connected_set(g, rest):
            continue
        for t in sorted(set(assign[g.neighbors(v)].tolist()) - {UNASSIGNED, s}):
            if dv > sur[t]:
                continue
            trial = assign.copy()
            trial[v] = t
            tsur = sur.copy()
            tsur[s] += dv
            tsur[t] -= dv
            ins = _enabled_insert(g, trial, tsur, (s, t))
            if ins is not None:
                moves.append(Move("transfer", int(v), t, ins[2],
                                  insert_vertex=ins[0], insert_target=ins[1]))

    dem = [int(v) for v in g.demand_indices if assign[v] != UNASSIGNED]
    for i, a in enumerate(dem):
        for b in dem[i + 1:]:
            s, t = int(assign[a]), int(assign[b])
            if s == t:
                continue
            da, db = -int(g.values[a]), -int(g.values[b])
            if sur[s] + da - db < 0 or sur[t] + db - da < 0:
                continue
            trial = assign.copy()
            trial[a], trial[b] = t, s
            if not (is_connected_set(g, np.flatnonzero(trial == s))
                    and is_connected_set(g, np.flatnonzero(trial == t))):
                continue
            tsur = sur.copy()
            tsur[s] += da - db
            tsur[t] += db - da
            ins = _enabled_insert(g, trial, tsur, (s, t))
            if ins is not None:
                moves.append(Move("swap", a, t, ins[2], partner=b,
                                  insert_vertex=ins[0], insert_target=ins[1]))
    return moves
