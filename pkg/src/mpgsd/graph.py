"""Problem graphs with supply/demand vertices and partition evaluation."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

UNASSIGNED = -1


class ContractError(ValueError):
    """A caller broke an operation's precondition."""


class InvalidInstanceError(ValueError):
    """A graph violates the structural invariants of a problem instance."""


class IntegrityError(RuntimeError):
    """A solver reported more than the known optimum."""


class ProblemGraph:
    """Undirected graph whose vertices carry nonzero integer values.

    Positive values are supplies, negative values are demands.  Vertex
    indices are dense and 0-based; supply vertices may sit anywhere.
    ``supply_indices[i]`` is the supply vertex that roots subgraph ``i``.
    """

    def __init__(self, values: Sequence[int], edges: Iterable[Sequence[int]] = (),
                 optimum: Optional[int] = None):
        vals = np.asarray(values, dtype=np.int64).reshape(-1)
        if np.any(vals == 0):
            raise InvalidInstanceError(
                f"vertex {int(np.flatnonzero(vals == 0)[0])} has value 0")
        nv = vals.size
        edge_arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if edge_arr.size:
            if edge_arr.min() < 0 or edge_arr.max() >= nv:
                raise InvalidInstanceError("edge references a vertex out of range")
            if np.any(edge_arr[:, 0] == edge_arr[:, 1]):
                raise InvalidInstanceError("self-loop")
            key = np.sort(edge_arr, axis=1)
            if np.unique(key, axis=0).shape[0] != key.shape[0]:
                raise InvalidInstanceError("duplicate edge")
        if optimum is not None and int(optimum) < 0:
            raise InvalidInstanceError("optimum must be nonnegative")

        self.values = vals
        self.edges = edge_arr
        self.optimum = None if optimum is None else int(optimum)
        self.supply_indices = np.flatnonzero(vals > 0).astype(np.int64)
        self.demand_indices = np.flatnonzero(vals < 0).astype(np.int64)

        # vertex -> subgraph it roots, -1 for demand vertices
        self.root_of = np.full(nv, UNASSIGNED, dtype=np.int64)
        self.root_of[self.supply_indices] = np.arange(self.supply_indices.size)

        # CSR adjacency, neighbor lists sorted ascending
        src = np.concatenate([edge_arr[:, 0], edge_arr[:, 1]])
        dst = np.concatenate([edge_arr[:, 1], edge_arr[:, 0]])
        order = np.lexsort((dst, src))
        self.indices = dst[order].astype(np.int64)
        self.indptr = np.zeros(nv + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=nv), out=self.indptr[1:])

        for arr in (self.values, self.edges, self.supply_indices, self.demand_indices,
                    self.root_of, self.indices, self.indptr):
            arr.setflags(write=False)

    @property
    def n_vertices(self) -> int:
        return int(self.values.size)

    @property
    def n_supply(self) -> int:
        return int(self.supply_indices.size)

    @property
    def n_demand(self) -> int:
        return int(self.demand_indices.size)

    @property
    def total_supply(self) -> int:
        return int(self.values[self.supply_indices].sum())

    @property
    def total_demand(self) -> int:
        return int(-self.values[self.demand_indices].sum())

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def is_supply(self, v: int) -> bool:
        return bool(self.values[v] > 0)

    def __eq__(self, other):
        if not isinstance(other, ProblemGraph):
            return NotImplemented
        return (np.array_equal(self.values, other.values)
                and np.array_equal(self.edges, other.edges)
                and self.optimum == other.optimum)

    def __repr__(self):
        return (f"ProblemGraph(n_supply={self.n_supply}, n_demand={self.n_demand}, "
                f"n_edges={len(self.edges)}, optimum={self.optimum})")


class Partition:
    """Assignment of demand vertices to subgraphs.

    ``assignment`` spans all vertices.  A demand vertex holds a subgraph
    index in ``0..n-1`` or ``UNASSIGNED``; a supply vertex always holds the
    index of the subgraph it roots.  Subgraph vertex sets are derived from
    this map, so subgraphs are disjoint by construction.
    """

    def __init__(self, g: ProblemGraph, assignment: Sequence[int]):
        arr = np.array(assignment, dtype=np.int64).reshape(-1)
        if arr.size != g.n_vertices:
            raise ContractError(
                f"assignment has {arr.size} entries, graph has {g.n_vertices} vertices")
        n = g.n_supply
        if arr.size and (arr.min() < UNASSIGNED or arr.max() >= n):
            raise ContractError("subgraph index out of range")
        if not np.array_equal(arr[g.supply_indices], g.root_of[g.supply_indices]):
            raise ContractError("supply vertex assigned to a foreign subgraph")
        self.assignment = arr
        self.n = n

    @classmethod
    def empty(cls, g: ProblemGraph) -> "Partition":
        return cls(g, g.root_of)

    @classmethod
    def from_mapping(cls, g: ProblemGraph, mapping: Mapping[int, int]) -> "Partition":
        arr = g.root_of.copy()
        for v, s in mapping.items():
            if g.values[v] > 0:
                raise ContractError(f"vertex {v} is a supply vertex")
            arr[v] = s
        return cls(g, arr)

    def members(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == i)

    def assigned_pairs(self, g: ProblemGraph) -> list[tuple[int, int]]:
        """(demand vertex, subgraph) pairs of every assigned demand vertex."""
        d = g.demand_indices
        sel = self.assignment[d] != UNASSIGNED
        return [(int(v), int(s)) for v, s in zip(d[sel], self.assignment[d][sel])]

    def copy(self) -> "Partition":
        new = object.__new__(Partition)
        new.assignment = self.assignment.copy()
        new.n = self.n
        return new

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.assignment, other.assignment)

    def __repr__(self):
        return f"Partition(n={self.n}, assignment={self.assignment.tolist()})"


def _check_dims(g: ProblemGraph, pi: Partition) -> None:
    if pi.n != g.n_supply or pi.assignment.size != g.n_vertices:
        raise ContractError(
            f"partition of {pi.n} subgraphs over {pi.assignment.size} vertices does not "
            f"match graph with {g.n_supply} supplies and {g.n_vertices} vertices")


def objective(g: ProblemGraph, pi: Partition) -> int:
    """Total absolute demand of assigned demand vertices."""
    _check_dims(g, pi)
    d = g.demand_indices
    mask = pi.assignment[d] != UNASSIGNED
    return int(-g.values[d][mask].sum())


def subgraph_surplus(g: ProblemGraph, pi: Partition, i: int) -> int:
    """Supply of subgraph ``i`` minus the demand already assigned to it."""
    _check_dims(g, pi)
    if not 0 <= i < pi.n:
        raise ContractError(f"subgraph index {i} out of range 0..{pi.n - 1}")
    return int(g.values[pi.assignment == i].sum())


@dataclass(frozen=True)
class Violation:
    kind: str  # "supply" or "connectivity"
    subgraph: int
    detail: str


@dataclass
class FeasibilityReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def is_connected_set(g: ProblemGraph, members: np.ndarray) -> bool:
    """True when ``members`` induces a connected subgraph of ``g``."""
    if members.size <= 1:
        return True
    inside = np.zeros(g.n_vertices, dtype=bool)
    inside[members] = True
    seen = np.zeros(g.n_vertices, dtype=bool)
    start = int(members[0])
    seen[start] = True
    queue = deque([start])
    count = 1
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if inside[w] and not seen[w]:
                seen[w] = True
                count += 1
                queue.append(int(w))
    return count == members.size


def is_feasible(g: ProblemGraph, pi: Partition) -> FeasibilityReport:
    """Check the supply constraint and induced connectivity of every subgraph."""
    _check_dims(g, pi)
    report = FeasibilityReport()
    for i in range(pi.n):
        members = pi.members(i)
        surplus = int(g.values[members].sum())
        if surplus < 0:
            report.violations.append(
                Violation("supply", i, f"subgraph {i} is short by {-surplus}"))
        if not is_connected_set(g, members):
            report.violations.append(
                Violation("connectivity", i, f"subgraph {i} is not connected"))
    return report
