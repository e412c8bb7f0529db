"""Clause collision graph, coloring, and phaser dispatch schedules.

The collision graph of a k-SAT instance is an intersection graph: two
clauses collide when their variable sets overlap. A color class is valid
exactly when the union of its clauses' variables is disjoint from the next
clause's variables, so coloring never needs explicit adjacency lists. This
keeps dense graphs (k=8, r=176 gives degrees near m) tractable.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import ParameterError
from .sat import SatInstance


def ceil_log2(x: int) -> int:
    if x < 1:
        raise ParameterError(f"ceil_log2 needs x >= 1, got {x}")
    return (x - 1).bit_length()


class CollisionGraph:
    """Clauses as nodes; an edge wherever two clauses share a variable."""

    def __init__(self, var_sets: Sequence[Iterable[int]], n_vars: int | None = None):
        self.var_sets = [frozenset(int(v) for v in vs) for vs in var_sets]
        if n_vars is None:
            n_vars = 1 + max((max(vs) for vs in self.var_sets if vs), default=-1)
        self.n_vars = n_vars
        occ: list[list[int]] = [[] for _ in range(n_vars)]
        for j, vs in enumerate(self.var_sets):
            for v in vs:
                occ[v].append(j)
        self.occurrences = [np.array(o, dtype=np.int64) for o in occ]

    def __len__(self) -> int:
        return len(self.var_sets)

    @cached_property
    def incidence(self) -> np.ndarray:
        inc = np.zeros((len(self), self.n_vars), dtype=np.float32)
        for j, vs in enumerate(self.var_sets):
            inc[j, list(vs)] = 1.0
        return inc

    @cached_property
    def degrees(self) -> np.ndarray:
        m = len(self)
        deg = np.zeros(m, dtype=np.int64)
        inc = self.incidence
        for lo in range(0, m, 1024):
            block = (inc[lo:lo + 1024] @ inc.T) > 0
            deg[lo:lo + 1024] = block.sum(axis=1) - 1
        return deg

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and not self.var_sets[i].isdisjoint(self.var_sets[j])

    def neighbors(self, j: int) -> np.ndarray:
        idx = [self.occurrences[v] for v in self.var_sets[j]]
        if not idx:
            return np.zeros(0, dtype=np.int64)
        nb = np.unique(np.concatenate(idx))
        return nb[nb != j]

    def edges(self) -> Iterator[tuple[int, int]]:
        for i in range(len(self)):
            for j in self.neighbors(i):
                if j > i:
                    yield i, int(j)

    def num_edges(self) -> int:
        return int(self.degrees.sum()) // 2


def build_collision_graph(instance: SatInstance) -> CollisionGraph:
    return CollisionGraph(instance.variable_sets(), n_vars=instance.n)


@dataclass(frozen=True)
class ClausePartition:
    """Disjoint partition of clause indices; part index is the color."""

    parts: tuple

    @property
    def c(self) -> int:
        return len(self.parts)

    @property
    def s_max(self) -> int:
        return max((len(p) for p in self.parts), default=0)

    def colors(self, m: int) -> np.ndarray:
        out = np.full(m, -1, dtype=np.int64)
        for color, part in enumerate(self.parts):
            out[list(part)] = color
        return out

    def is_disjoint(self, graph: CollisionGraph) -> bool:
        """Every clause appears once and no part holds colliding clauses."""
        seen = sorted(j for p in self.parts for j in p)
        if seen != list(range(len(graph))):
            return False
        for part in self.parts:
            union: set[int] = set()
            total = 0
            for j in part:
                union |= graph.var_sets[j]
                total += len(graph.var_sets[j])
            if len(union) != total:
                return False
        return True


def _grow(mat: np.ndarray, need: int, axis: int) -> np.ndarray:
    if mat.shape[axis] > need:
        return mat
    pad = [(0, 0)] * mat.ndim
    pad[axis] = (0, max(mat.shape[axis], 16))
    return np.pad(mat, pad)


def _greedy_degree(graph: CollisionGraph) -> list[int]:
    m = len(graph)
    order = sorted(range(m), key=lambda j: (-int(graph.degrees[j]), j))
    class_vars = np.zeros((16, graph.n_vars), dtype=bool)
    ncolors = 0
    colors = [0] * m
    for j in order:
        vs = list(graph.var_sets[j])
        if ncolors and vs:
            clash = class_vars[:ncolors][:, vs].any(axis=1)
            free = np.flatnonzero(~clash)
            color = int(free[0]) if free.size else ncolors
        else:
            color = 0
        if color == ncolors:
            ncolors += 1
            class_vars = _grow(class_vars, ncolors, 0)
        class_vars[color, vs] = True
        colors[j] = color
    return colors


def _dsatur(graph: CollisionGraph) -> list[int]:
    m = len(graph)
    if m == 0:
        return []
    deg = graph.degrees
    # Selection key packs (saturation, degree, -index) into one integer.
    sat_step = (int(deg.max()) + 2) * m
    key = deg * m + (m - 1 - np.arange(m, dtype=np.int64))
    satcount = np.zeros(m, dtype=np.int64)
    seen = np.zeros((16, m), dtype=bool)  # seen[c, j]: color c appears among j's neighbours
    class_vars = np.zeros((16, graph.n_vars), dtype=bool)
    colors = [-1] * m
    ncolors = 0
    for _ in range(m):
        v = int(np.argmax(key))
        row = seen[:ncolors, v]
        free = np.flatnonzero(~row)
        color = int(free[0]) if free.size else ncolors
        if color == ncolors:
            ncolors += 1
            seen = _grow(seen, ncolors, 0)
            class_vars = _grow(class_vars, ncolors, 0)
        colors[v] = color
        key[v] = -1
        new_vars = [u for u in graph.var_sets[v] if not class_vars[color, u]]
        if new_vars:
            class_vars[color, new_vars] = True
            # Repeated indices are harmless: fancy-index updates apply once.
            touched = np.concatenate([graph.occurrences[u] for u in new_vars])
            fresh = touched[~seen[color, touched]]
            seen[color, fresh] = True
            satcount[fresh] += 1
            live = fresh[key[fresh] >= 0]
            key[live] += sat_step
    return colors


def color_clauses(graph: CollisionGraph, strategy: str = "dsatur") -> ClausePartition:
    """Proper coloring of the collision graph; ties go to the lowest clause index."""
    if strategy == "dsatur":
        colors = _dsatur(graph)
    elif strategy == "greedy-degree":
        colors = _greedy_degree(graph)
    else:
        raise ParameterError(f"unknown coloring strategy {strategy!r}")
    ncolors = 1 + max(colors, default=-1)
    parts: list[list[int]] = [[] for _ in range(ncolors)]
    for j, color in enumerate(colors):
        parts[color].append(j)
    return ClausePartition(tuple(tuple(p) for p in parts))


def task_lifetime(k: int, n_P: int) -> int:
    """Logical cycles a dispatched phaser task keeps its ancillas busy."""
    return 4 * ceil_log2(k) + n_P - 1


@dataclass(frozen=True)
class ClauseSchedule:
    partition: ClausePartition
    tau: int
    dispatch: tuple  # ((cycle, clause indices), ...)
    lifetime: int
    n_jobs: int

    @property
    def dispatch_span(self) -> int:
        """Cycles from the first dispatch until the dispatch slots are exhausted."""
        return self.partition.c * self.tau

    def peak_concurrency(self) -> int:
        """Largest number of tasks alive in any cycle of the emitted plan."""
        events: dict[int, int] = {}
        for cycle, clauses in self.dispatch:
            events[cycle] = events.get(cycle, 0) + len(clauses)
            events[cycle + self.lifetime] = events.get(cycle + self.lifetime, 0) - len(clauses)
        peak = live = 0
        for t in sorted(events):
            live += events[t]
            peak = max(peak, live)
        return peak

    def to_json(self) -> str:
        return json.dumps({
            "tau": self.tau,
            "lambda": self.lifetime,
            "n_jobs": self.n_jobs,
            "c": self.partition.c,
            "s_max": self.partition.s_max,
            "dispatch": {str(cycle): list(clauses) for cycle, clauses in self.dispatch},
        }, sort_keys=True)


def make_schedule(partition: ClausePartition, k: int, n_P: int, tau: int = 1) -> ClauseSchedule:
    """Release one part every ``tau`` cycles."""
    if not isinstance(tau, (int, np.integer)) or tau < 1:
        raise ParameterError(f"slowdown factor tau must be an integer >= 1, got {tau}")
    lam = task_lifetime(k, n_P)
    dispatch = tuple((i * tau, tuple(part)) for i, part in enumerate(partition.parts))
    n_jobs = math.ceil(partition.s_max * lam / tau)
    return ClauseSchedule(partition=partition, tau=int(tau), dispatch=dispatch, lifetime=lam, n_jobs=n_jobs)


def jobs_from_sizes(s_max: int, k: int, n_P: int, tau: int = 1) -> int:
    """n_jobs for a schedule known only by its largest part."""
    if tau < 1:
        raise ParameterError(f"slowdown factor tau must be >= 1, got {tau}")
    return math.ceil(s_max * task_lifetime(k, n_P) / tau)
