"""Instance generation with planted optima, and the plain-text instance format.

File layout (LF line endings, decimal integers)::

    mpgsd 1
    <n_vertices> <n_edges> <n_supply>
    <vertex values, supply vertices first>
    <u> <v>            # one line per edge, 0-based
    optimum <integer>  # optional
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .graph import InvalidInstanceError, Partition, ProblemGraph

SUPPLY_SIZES = (2, 5, 10, 25, 50, 100)
DEMAND_FACTORS = (3, 5, 10, 20)
KINDS = ("tree", "general")


class InstanceFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class InstanceSpec:
    n_supply: int
    n_demand: int
    kind: str = "tree"
    seed: int = 0
    value_range: Tuple[int, int] = (1, 10)
    extra_edge_factor: float = 0.3

    def __post_init__(self):
        if self.n_supply < 1:
            raise ValueError("n_supply must be positive")
        if self.n_demand < self.n_supply:
            raise ValueError(
                f"need at least one demand vertex per supply ({self.n_demand} < {self.n_supply})")
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        lo, hi = self.value_range
        if not 1 <= lo <= hi:
            raise ValueError(f"bad value range {self.value_range}")
        if self.extra_edge_factor < 0:
            raise ValueError("extra_edge_factor must be nonnegative")

    @property
    def label(self) -> str:
        return f"{self.n_supply} X {self.n_demand}"


def size_classes(max_supply: int | None = None, max_demand: int | None = None):
    """The (n_supply, n_demand) grid, optionally truncated."""
    out = []
    for ns in SUPPLY_SIZES:
        for f in DEMAND_FACTORS:
            nd = ns * f
            if (max_supply is None or ns <= max_supply) and \
                    (max_demand is None or nd <= max_demand):
                out.append((ns, nd))
    return out


def generate_with_witness(spec: InstanceSpec) -> tuple[ProblemGraph, Partition]:
    """Generate an instance and the planted partition that attains its optimum."""
    rng = np.random.default_rng(spec.seed)
    ns, nd = spec.n_supply, spec.n_demand
    lo, hi = spec.value_range
    demand = rng.integers(lo, hi + 1, size=nd)

    # random split of the demand vertices into ns nonempty groups
    perm = rng.permutation(nd) + ns
    cuts = np.sort(rng.choice(np.arange(1, nd), size=ns - 1, replace=False)) if ns > 1 \
        else np.array([], dtype=np.int64)
    groups = np.split(perm, cuts)

    edges = []
    assignment = np.empty(ns + nd, dtype=np.int64)
    supply = np.empty(ns, dtype=np.int64)
    for i, grp in enumerate(groups):
        members = [i]
        for v in grp.tolist():
            parent = members[int(rng.integers(len(members)))]
            edges.append((parent, v))
            members.append(v)
        assignment[i] = i
        assignment[grp] = i
        supply[i] = demand[grp - ns].sum()

    # join the group trees into a single spanning tree
    for i in range(1, ns):
        j = int(rng.integers(i))
        a = int(rng.choice(np.append(groups[i], i)))
        b = int(rng.choice(np.append(groups[j], j)))
        edges.append((a, b))

    nv = ns + nd
    if spec.kind == "general":
        present = {(min(a, b), max(a, b)) for a, b in edges}
        want = math.ceil(spec.extra_edge_factor * nd)
        want = min(want, nv * (nv - 1) // 2 - len(present))
        while want > 0:
            a, b = (int(x) for x in rng.integers(nv, size=2))
            if a == b:
                continue
            key = (min(a, b), max(a, b))
            if key in present:
                continue
            present.add(key)
            edges.append(key)
            want -= 1

    values = np.concatenate([supply, -demand])
    g = ProblemGraph(values, edges, optimum=int(demand.sum()))
    return g, Partition(g, assignment)


def generate(spec: InstanceSpec) -> ProblemGraph:
    return generate_with_witness(spec)[0]


def format_instance(g: ProblemGraph) -> str:
    ns = g.n_supply
    if not np.all(g.values[:ns] > 0):
        raise InvalidInstanceError("file format requires supply vertices first")
    lines = ["mpgsd 1",
             f"{g.n_vertices} {len(g.edges)} {ns}",
             " ".join(str(int(x)) for x in g.values)]
    lines += [f"{int(a)} {int(b)}" for a, b in g.edges]
    if g.optimum is not None:
        lines.append(f"optimum {g.optimum}")
    return "\n".join(lines) + "\n"


def write_instance(g: ProblemGraph, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_instance(g))


def _ints(lineno, text, count=None):
    parts = text.split(" ")
    if count is not None and len(parts) != count:
        raise InstanceFormatError(lineno, f"expected {count} integers, got {len(parts)}")
    try:
        out = [int(p) for p in parts]
    except ValueError:
        raise InstanceFormatError(lineno, f"not an integer list: {text!r}") from None
    if any(p != str(x) for p, x in zip(parts, out)):
        raise InstanceFormatError(lineno, f"non-canonical integer in {text!r}")
    return out


def parse_instance(text: str) -> ProblemGraph:
    if "\r" in text:
        raise InstanceFormatError(1, "CR characters are not allowed")
    if not text.endswith("\n"):
        raise InstanceFormatError(max(1, text.count("\n") + 1), "missing final newline")
    lines = text[:-1].split("\n")
    if lines[0] != "mpgsd 1":
        raise InstanceFormatError(1, f"bad header {lines[0]!r}")
    if len(lines) < 3:
        raise InstanceFormatError(len(lines) + 1, "truncated file")
    nv, ne, ns = _ints(2, lines[1], 3)
    if nv < 1 or ne < 0 or not 0 <= ns <= nv:
        raise InstanceFormatError(2, "bad counts")
    values = _ints(3, lines[2], nv)
    for k, x in enumerate(values):
        if x == 0:
            raise InstanceFormatError(3, f"vertex {k} has value 0")
        if (k < ns) != (x > 0):
            raise InstanceFormatError(
                3, f"vertex {k}: supply vertices must come first and be positive")
    if len(lines) < 3 + ne:
        raise InstanceFormatError(len(lines) + 1, f"expected {ne} edge lines")
    edges = []
    seen = set()
    for k in range(ne):
        lineno = 4 + k
        a, b = _ints(lineno, lines[3 + k], 2)
        if not (0 <= a < nv and 0 <= b < nv):
            raise InstanceFormatError(lineno, f"vertex index out of range in edge {a} {b}")
        if a == b:
            raise InstanceFormatError(lineno, f"self-loop on vertex {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise InstanceFormatError(lineno, f"duplicate edge {a} {b}")
        seen.add(key)
        edges.append((a, b))
    rest = lines[3 + ne:]
    optimum = None
    if rest:
        lineno = 4 + ne
        head, _, tail = rest[0].partition(" ")
        if head != "optimum" or len(rest) > 1:
            raise InstanceFormatError(lineno if head != "optimum" else lineno + 1,
                                      "unexpected trailing content")
        optimum = _ints(lineno, tail, 1)[0]
        if optimum < 0:
            raise InstanceFormatError(lineno, "optimum must be nonnegative")
    return ProblemGraph(values, edges, optimum=optimum)


def read_instance(path) -> ProblemGraph:
    with open(path, "r", newline="") as fh:
        return parse_instance(fh.read())
