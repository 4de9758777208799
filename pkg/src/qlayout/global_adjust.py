"""Whole-program qubit relabeling.

Before any SWAP is spent, try to legalize CNOTs by renaming qubits: walk
the CNOT list front to back, and at the first illegal one branch over the
transpositions that would make it legal -- swap the control with a
neighbour of the target, or the target with a neighbour of the control --
keeping only candidates that leave every already-passed CNOT legal.  Each
branch relabels the whole list and recurses, so the first-illegal index
strictly increases and every branch terminates.

Terminal relabelings (fully legal, dead end, or capped by the search
limits) are ranked by the estimated SWAP cost of whatever is still
illegal; the identity relabeling is always ranked as a fallback, last, so
a relabeling that removes every illegal CNOT beats doing nothing even
when the estimate rounds to zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .coupling import CouplingGraph
from .ir import Circuit, GateKind, QubitMapping
from .routing import _residual_intermediates, estimate_cost


@dataclass(frozen=True)
class SearchLimits:
    """Caps on the relabeling search; on either cap the best terminal seen
    so far wins.  ``max_depth`` defaults to twice the graph size."""

    max_nodes: int = 4096
    max_depth: int | None = None

    def depth_for(self, graph: CouplingGraph) -> int:
        return self.max_depth if self.max_depth is not None else 2 * graph.num_qubits


def candidate_mappings(ill: tuple[int, int], graph: CouplingGraph,
                       prefix: Sequence[tuple[int, int]]) -> list[QubitMapping]:
    """Transpositions that legalize ``ill`` without breaking ``prefix``.

    Control-side swaps (control with each neighbour of the target) come
    first, then target-side, each in ascending neighbour order.
    """
    control, target = ill
    seen: dict[QubitMapping, None] = {}
    for fixed, moved in ((target, control), (control, target)):
        for nbr in graph.adjacent(fixed):
            if nbr == moved:
                continue
            m = QubitMapping.swap(moved, nbr)
            if m in seen:
                continue
            if all(graph.is_legal_cnot(m(c), m(t), respect_direction=False)
                   for c, t in prefix):
                seen[m] = None
    return list(seen)


def global_adjust(circuit: Circuit, graph: CouplingGraph,
                  limits: SearchLimits | None = None) -> tuple[QubitMapping, float]:
    """Best zero-gate relabeling for ``circuit`` and its estimated residual
    SWAP cost.

    The returned mapping is meant to be applied to the whole program
    (``apply_mapping(circuit, mapping)``); it never adds gates.  Ties on
    the estimate are broken by exploration order: depth-first, control-side
    candidates before target-side, identity last.
    """
    limits = limits or SearchLimits()
    max_depth = limits.depth_for(graph)
    cnots = [(g.qubits[0], g.qubits[1]) for g in circuit.gates
             if g.kind is GateKind.CNOT]

    explored: list[tuple[QubitMapping, float]] = []
    budget = [limits.max_nodes]

    def first_illegal(cs: Sequence[tuple[int, int]]) -> int:
        for i, (c, t) in enumerate(cs):
            if not graph.is_legal_cnot(c, t, respect_direction=False):
                return i
        return -1

    def search(cs: list[tuple[int, int]], accumulated: QubitMapping, depth: int) -> None:
        i = first_illegal(cs)
        if i < 0:
            explored.append((accumulated, 0.0))
            return
        if depth >= max_depth or budget[0] <= 0:
            explored.append((accumulated, estimate_cost(_residual_intermediates(cs, graph))))
            return
        budget[0] -= 1
        candidates = candidate_mappings(cs[i], graph, cs[:i])
        if not candidates:
            explored.append((accumulated, estimate_cost(_residual_intermediates(cs, graph))))
            return
        for m in candidates:
            if budget[0] <= 0:
                break
            search([(m(c), m(t)) for c, t in cs], accumulated.then(m), depth + 1)

    search(cnots, QubitMapping.identity(), 0)
    explored.append((QubitMapping.identity(),
                     estimate_cost(_residual_intermediates(cnots, graph))))

    best_map, best_cost = explored[0]
    for mapping, cost in explored[1:]:
        if cost < best_cost:
            best_map, best_cost = mapping, cost
    return best_map, best_cost
