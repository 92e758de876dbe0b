"""Cycle/tail statistics of a single functional graph.

``analyze`` is the linear-time path used by sweeps; ``naive_analyze`` walks the
rho path from every node independently and serves as its test oracle.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields

import numpy as np

from dlogmap._kernels import NSTATS, STAT_FIELDS, analyze_into, analyze_rows
from dlogmap.numtheory import TransitionMap


@dataclass(frozen=True)
class GraphStats:
    """Measured statistics of one functional graph on n nodes.

    Tail lengths count edges to the first cyclic node (0 on a cycle).
    ``sum_cycle_over_nodes`` adds, for every node, the cycle length of its
    component; dividing either sum by n gives the per-node average.
    """

    n: int
    components: int
    cyclic_nodes: int
    image_nodes: int
    terminal_nodes: int
    tail_nodes: int
    fixed_points: int
    sum_cycle_over_nodes: int
    sum_tail_over_nodes: int
    max_cycle: int
    max_tail: int

    @classmethod
    def from_row(cls, row) -> "GraphStats":
        return cls(*(int(v) for v in row))

    def as_row(self) -> tuple[int, ...]:
        return astuple(self)

    @property
    def avg_cycle(self) -> float:
        return self.sum_cycle_over_nodes / self.n

    @property
    def avg_tail(self) -> float:
        return self.sum_tail_over_nodes / self.n


assert tuple(f.name for f in fields(GraphStats)) == STAT_FIELDS


class Workspace:
    """Scratch buffers reusable across ``analyze`` calls on graphs of size <= capacity."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self.buffers = tuple(np.empty(max(capacity, 1), np.int32) for _ in range(6))
        self.out = np.empty(NSTATS, np.int64)

    def fits(self, n: int) -> bool:
        return n <= self.capacity


def as_table(graph) -> np.ndarray:
    """Coerce a TransitionMap or 1-based sequence to a validated int64 table."""
    if isinstance(graph, TransitionMap):
        return graph.next
    table = np.ascontiguousarray(graph, dtype=np.int64)
    if table.ndim != 1:
        raise ValueError("transition table must be one-dimensional")
    n = table.shape[0]
    if n and (table.min() < 1 or table.max() > n):
        bad = int(table[(table < 1) | (table > n)][0])
        raise ValueError(f"entry {bad} outside 1..{n}")
    return table


def analyze(graph, workspace: Workspace | None = None) -> GraphStats:
    table = as_table(graph)
    n = table.shape[0]
    if n == 0:
        return GraphStats(*([0] * NSTATS))
    if workspace is None or not workspace.fits(n):
        workspace = Workspace(n)
    analyze_into(table, workspace.out, *workspace.buffers)
    return GraphStats.from_row(workspace.out)


def analyze_many(tables) -> np.ndarray:
    """Stats rows (columns in GraphStats field order) for a 2-D stack of tables."""
    tables = np.ascontiguousarray(tables, dtype=np.int64)
    if tables.ndim != 2:
        raise ValueError("expected a 2-D array of tables")
    rows, n = tables.shape
    if n == 0:
        raise ValueError("tables must be non-empty")
    if rows and (tables.min() < 1 or tables.max() > n):
        raise ValueError(f"entries outside 1..{n}")
    out = np.zeros((rows, NSTATS), np.int64)
    analyze_rows(tables, out)
    return out


def naive_analyze(graph) -> GraphStats:
    table = [int(v) for v in as_table(graph)]
    n = len(table)
    f = [0] + table

    cycle_of: dict[int, int] = {}
    cycle_ids: set[int] = set()
    tail_of: dict[int, int] = {}
    for start in range(1, n + 1):
        seen: dict[int, int] = {}
        u, i = start, 0
        while u not in seen:
            seen[u] = i
            u = f[u]
            i += 1
        tail = seen[u]
        cycle_len = i - tail
        # u is the first repeated node: on the cycle
        members = [u]
        v = f[u]
        while v != u:
            members.append(v)
            v = f[v]
        cycle_ids.add(min(members))
        tail_of[start] = tail
        cycle_of[start] = cycle_len

    cyclic = sum(1 for t in tail_of.values() if t == 0)
    image = len(set(table))
    return GraphStats(
        n=n,
        components=len(cycle_ids),
        cyclic_nodes=cyclic,
        image_nodes=image,
        terminal_nodes=n - image,
        tail_nodes=n - cyclic,
        fixed_points=sum(1 for x in range(1, n + 1) if f[x] == x),
        sum_cycle_over_nodes=sum(cycle_of.values()),
        sum_tail_over_nodes=sum(tail_of.values()),
        max_cycle=max(cycle_of.values(), default=0),
        max_tail=max(tail_of.values(), default=0),
    )
