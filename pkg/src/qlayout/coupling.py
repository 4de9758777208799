"""Hardware layout as a coupling graph.

Edges are the CNOT pairs the hardware can execute.  A directed graph
restricts the control->target orientation; routing always works on the
undirected view and orientation is repaired afterwards by the direction
fixer.  Shortest paths break ties toward the lexicographically smallest
vertex sequence so every consumer is deterministic.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path


class DisconnectedGraphError(ValueError):
    """Raised when routing needs a path that does not exist."""


class LayoutKind(Enum):
    LINEAR = "linear"
    CIRCLE = "circle"
    CENTRAL = "central"
    NEIGHBOUR = "neighbour"


@dataclass(frozen=True)
class CouplingGraph:
    """``num_qubits`` vertices and a set of (control, target) edges."""

    num_qubits: int
    edges: frozenset[tuple[int, int]]
    directed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset((int(a), int(b)) for a, b in self.edges))
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop at qubit {a}")
            if not (0 <= a < self.num_qubits and 0 <= b < self.num_qubits):
                raise ValueError(f"edge ({a},{b}) outside 0..{self.num_qubits - 1}")

    def _check_index(self, q: int) -> None:
        if not (0 <= q < self.num_qubits):
            raise IndexError(f"qubit {q} outside 0..{self.num_qubits - 1}")

    @cached_property
    def _undirected(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Sorted undirected adjacency lists, indexed by vertex."""
        adj: list[set[int]] = [set() for _ in range(self.num_qubits)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return tuple(tuple(sorted(s)) for s in adj)

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs BFS distances on the undirected view; -1 if unreachable."""
        rows = []
        for src in range(self.num_qubits):
            dist = [-1] * self.num_qubits
            dist[src] = 0
            queue = deque([src])
            while queue:
                u = queue.popleft()
                for v in self.neighbors[u]:
                    if dist[v] < 0:
                        dist[v] = dist[u] + 1
                        queue.append(v)
            rows.append(tuple(dist))
        return tuple(rows)

    @cached_property
    def is_connected(self) -> bool:
        return self.num_qubits > 0 and all(d >= 0 for d in self.distances[0])

    def adjacent(self, q: int) -> tuple[int, ...]:
        self._check_index(q)
        return self.neighbors[q]

    def degree(self, q: int) -> int:
        return len(self.adjacent(q))

    def is_legal_cnot(self, control: int, target: int, respect_direction: bool = True) -> bool:
        """Whether cx(control, target) can run as written.

        With ``respect_direction`` false (or on an undirected graph) either
        orientation of an edge counts.
        """
        self._check_index(control)
        self._check_index(target)
        if self.directed and respect_direction:
            return (control, target) in self.edges
        return frozenset((control, target)) in self._undirected

    def distance(self, a: int, b: int) -> int:
        self._check_index(a)
        self._check_index(b)
        d = self.distances[a][b]
        if d < 0:
            raise DisconnectedGraphError(f"no path between qubits {a} and {b}")
        return d

    def intermediates(self, a: int, b: int) -> int:
        """Number of interior vertices on a shortest a-b path."""
        return max(self.distance(a, b) - 1, 0)

    def shortest_path(self, a: int, b: int) -> list[int]:
        """Minimal-hop path a..b; among ties, the lexicographically smallest
        vertex sequence (walk greedily to the smallest-index next vertex)."""
        self._check_index(a)
        self._check_index(b)
        dist_to_b = self.distances[b]
        if dist_to_b[a] < 0:
            raise DisconnectedGraphError(f"no path between qubits {a} and {b}")
        path = [a]
        cur = a
        while cur != b:
            cur = min(v for v in self.neighbors[cur] if dist_to_b[v] == dist_to_b[cur] - 1)
            path.append(cur)
        return path

    def to_json(self) -> str:
        payload = {"n": self.num_qubits, "directed": self.directed,
                   "edges": sorted([a, b] for a, b in self.edges)}
        return json.dumps(payload)


def make_layout(kind: LayoutKind | str, n: int) -> CouplingGraph:
    """Build one of the four canonical undirected layouts.

    linear: chain i-(i+1).  circle: chain plus the closing edge (n-1)-0.
    central: star with hub 0.  neighbour: row-major 2D grid, ceil(sqrt(n))
    columns, horizontal and vertical edges.
    """
    if isinstance(kind, str):
        try:
            kind = LayoutKind(kind.lower())
        except ValueError:
            raise ValueError(f"unknown layout {kind!r}; expected one of "
                             f"{[k.value for k in LayoutKind]}") from None
    minimum = 3 if kind is LayoutKind.CIRCLE else 2
    if n < minimum:
        raise ValueError(f"{kind.value} layout needs at least {minimum} qubits")
    edges: set[tuple[int, int]]
    if kind is LayoutKind.LINEAR:
        edges = {(i, i + 1) for i in range(n - 1)}
    elif kind is LayoutKind.CIRCLE:
        edges = {(i, i + 1) for i in range(n - 1)}
        edges.add((n - 1, 0))
    elif kind is LayoutKind.CENTRAL:
        edges = {(0, i) for i in range(1, n)}
    else:
        cols = math.isqrt(n)
        if cols * cols < n:
            cols += 1
        edges = set()
        for v in range(n):
            if (v % cols) != cols - 1 and v + 1 < n:
                edges.add((v, v + 1))
            if v + cols < n:
                edges.add((v, v + cols))
    return CouplingGraph(n, frozenset(edges), directed=False)


def coupling_from_json(text: str) -> CouplingGraph:
    data = json.loads(text)
    try:
        return CouplingGraph(int(data["n"]),
                             frozenset((int(a), int(b)) for a, b in data["edges"]),
                             directed=bool(data.get("directed", False)))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed coupling graph JSON: {exc}") from exc


def load_coupling(spec: str | Path) -> CouplingGraph:
    """Load a graph from a JSON file, or build one from the shorthand
    ``layout:NAME:N`` (e.g. ``layout:central:5``)."""
    text = str(spec)
    if text.startswith("layout:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected layout:NAME:N, got {text!r}")
        return make_layout(parts[1], int(parts[2]))
    return coupling_from_json(Path(spec).read_text())
