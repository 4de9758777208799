"""SWAP-chain routing with bounded lookahead.

An illegal CNOT (its qubit pair is not an edge of the undirected view) is
repaired by walking one endpoint along the shortest path until it sits
next to the other.  The walk is a chain of SWAPs (each expanded to three
CNOTs); the displaced states are *not* swapped back -- instead the induced
relabeling is applied to the rest of the program, which is what makes the
choice of which endpoint to move matter for everything downstream.

That choice is a binary tree over the remaining illegal CNOTs.  The top
``lookahead`` levels (default 4) are searched exactly; below the horizon
the cost of the residue is estimated by :func:`estimate_cost`.  Search
costs are accounted in flat units: 34 per intermediate vertex on the path
(one SWAP: 3 CNOTs + 4 direction-fix H), plus 4 when the control side is
the one displaced, anticipating the orientation repair of the final CNOT.

Orientation (on directed graphs) is repaired afterwards by
:func:`fix_directions`, and :func:`naive_route` provides the classic
swap-there-and-back construction used as the benchmark baseline.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .coupling import CouplingGraph, DisconnectedGraphError
from .ir import Circuit, Gate, GateKind, QubitMapping, cx, h

#: flat accounting cost of one SWAP (3 CNOTs + 4 H at weights 10/1)
SWAP_COST = 34

#: extra accounting cost when the displaced endpoint is the control
CONTROL_MOVE_COST = 4

DEFAULT_LOOKAHEAD = 4


class LegalityError(RuntimeError):
    """A CNOT that no orientation of the coupling graph can execute."""


class Mover(Enum):
    CONTROL = "control"
    TARGET = "target"


@dataclass(frozen=True)
class SwapChain:
    """One routing decision: walk ``mover`` along ``path`` to the far
    endpoint's neighbour.  ``swaps`` are the pairs to exchange in order and
    ``relabeling`` is the induced rewrite for all subsequent gates."""

    mover: Mover
    path: tuple[int, ...]
    swaps: tuple[tuple[int, int], ...]
    relabeling: QubitMapping
    search_cost: int

    def gates(self) -> list[Gate]:
        """SWAP expansion: cx(a,b) cx(b,a) cx(a,b) per exchanged pair."""
        out: list[Gate] = []
        for a, b in self.swaps:
            out += [cx(a, b), cx(b, a), cx(a, b)]
        return out


def estimate_cost(intermediate_counts: Sequence[int]) -> float:
    """Discounted SWAP-cost estimate for a list of illegal CNOTs.

    With n entries, the i-th (1-based) contributes
    ((n - i) / n)^2 * m_i * 34 where m_i is its intermediate-vertex count:
    later repairs are increasingly perturbed by earlier ones, so their
    estimates are damped, down to zero weight for the last entry.
    """
    n = len(intermediate_counts)
    if n == 0:
        return 0.0
    return sum(((n - i) / n) ** 2 * m * SWAP_COST
               for i, m in enumerate(intermediate_counts, start=1))


def _chain(ill: tuple[int, int], path: Sequence[int], mover: Mover) -> SwapChain:
    inter = list(path[1:-1])
    stops = [ill[0]] + inter if mover is Mover.CONTROL else [ill[1]] + inter[::-1]
    swaps = tuple(zip(stops, stops[1:]))
    relabel = {stops[0]: stops[-1]}
    for prev, cur in zip(stops, stops[1:]):
        relabel[cur] = prev
    cost = SWAP_COST * len(inter) + (CONTROL_MOVE_COST if mover is Mover.CONTROL else 0)
    return SwapChain(mover, tuple(path), swaps, QubitMapping.from_dict(relabel), cost)


def _first_illegal(cnots: Sequence[tuple[int, int]], graph: CouplingGraph) -> int:
    for i, (c, t) in enumerate(cnots):
        if not graph.is_legal_cnot(c, t, respect_direction=False):
            return i
    return -1


def _residual_intermediates(cnots: Sequence[tuple[int, int]],
                            graph: CouplingGraph) -> list[int]:
    return [graph.intermediates(c, t) for c, t in cnots
            if not graph.is_legal_cnot(c, t, respect_direction=False)]


def _choose_chain(ill: tuple[int, int], rest: Sequence[tuple[int, int]],
                  graph: CouplingGraph, lookahead: int) -> tuple[SwapChain, float]:
    """Best first-level SwapChain for ``ill`` by exact search of the top
    ``lookahead`` levels of the control/target decision tree.

    Leaves below the horizon add the estimated cost of their residue.  The
    control branch is explored before the target branch at every level, and
    ties keep the earlier-explored leaf.
    """
    best_cost = [float("inf")]
    best_first: list[SwapChain | None] = [None]

    def descend(ill: tuple[int, int], rest: Sequence[tuple[int, int]],
                acc: float, first: SwapChain | None, depth: int) -> None:
        path = graph.shortest_path(ill[0], ill[1])
        for mover in (Mover.CONTROL, Mover.TARGET):
            chain = _chain(ill, path, mover)
            cost = acc + chain.search_cost
            lead = first if first is not None else chain
            m = chain.relabeling
            mapped = [(m(c), m(t)) for c, t in rest]
            j = _first_illegal(mapped, graph)
            if j >= 0 and depth < lookahead:
                descend(mapped[j], mapped[j + 1:], cost, lead, depth + 1)
                continue
            if j >= 0:
                cost += estimate_cost(_residual_intermediates(mapped[j:], graph))
            if cost < best_cost[0]:
                best_cost[0] = cost
                best_first[0] = lead

    descend(ill, rest, 0.0, None, 1)
    assert best_first[0] is not None
    return best_first[0], best_cost[0]


def lookahead_choose(ill: tuple[int, int], rest: Sequence[tuple[int, int]],
                     graph: CouplingGraph,
                     lookahead: int = DEFAULT_LOOKAHEAD) -> tuple[QubitMapping, float]:
    """Relabeling of the chosen repair for ``ill`` and its search cost
    (exact over the horizon, estimated below it)."""
    chain, cost = _choose_chain(tuple(ill), list(rest), graph, lookahead)
    return chain.relabeling, cost


@dataclass(frozen=True)
class RouteResult:
    circuit: Circuit
    final_mapping: QubitMapping
    search_cost: int  #: committed decisions, in flat 34/+4 units
    swaps_emitted: int


def route_circuit(circuit: Circuit, graph: CouplingGraph,
                  lookahead: int = DEFAULT_LOOKAHEAD) -> RouteResult:
    """Insert SWAP chains until no CNOT is illegal on the undirected view.

    Each repair relabels the rest of the program (the triggering CNOT
    included); the returned mapping is the composition of every repair, so
    original qubit q ends the program on wire ``final_mapping(q)``.
    """
    if lookahead < 1:
        raise ValueError("lookahead must be at least 1")
    if not graph.is_connected:
        raise DisconnectedGraphError("coupling graph is not connected")
    pending = list(circuit.gates)
    out: list[Gate] = []
    total = QubitMapping.identity()
    search_cost = 0
    swaps = 0
    k = 0
    while k < len(pending):
        g = pending[k]
        if g.kind is GateKind.CNOT and not graph.is_legal_cnot(
                g.qubits[0], g.qubits[1], respect_direction=False):
            rest = [(x.qubits[0], x.qubits[1]) for x in pending[k + 1:]
                    if x.kind is GateKind.CNOT]
            chain, _ = _choose_chain((g.qubits[0], g.qubits[1]), rest, graph, lookahead)
            out.extend(chain.gates())
            pending[k:] = [x.relabeled(chain.relabeling) for x in pending[k:]]
            total = total.then(chain.relabeling)
            search_cost += chain.search_cost
            swaps += len(chain.swaps)
            continue  # pending[k] is the same CNOT relabeled, now legal
        out.append(g)
        k += 1
    return RouteResult(circuit.with_gates(out), total, search_cost, swaps)


def local_adjust(circuit: Circuit, graph: CouplingGraph,
                 lookahead: int = DEFAULT_LOOKAHEAD) -> tuple[Circuit, QubitMapping]:
    """Routed circuit and the cumulative relabeling it ends on."""
    result = route_circuit(circuit, graph, lookahead)
    return result.circuit, result.final_mapping


def fix_directions(circuit: Circuit, graph: CouplingGraph) -> Circuit:
    """Repair CNOT orientation on directed graphs.

    A CNOT whose orientation is missing from the edge set is rewritten as
    the reversed CNOT wrapped in four H gates.  No-op for undirected
    graphs; a CNOT with neither orientation available means routing was
    skipped or broken, and raises :class:`LegalityError`.
    """
    if not graph.directed:
        return circuit
    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind is not GateKind.CNOT or graph.is_legal_cnot(*g.qubits):
            out.append(g)
            continue
        c, t = g.qubits
        if not graph.is_legal_cnot(t, c):
            raise LegalityError(f"cx({c},{t}) has no legal orientation")
        lo, hi = sorted((c, t))
        out += [h(lo), h(hi), cx(t, c), h(lo), h(hi)]
    return circuit.with_gates(out)


def naive_route(circuit: Circuit, graph: CouplingGraph) -> Circuit:
    """Swap-there-and-back baseline.

    Every illegal CNOT is wrapped in SWAPs that walk the control's state
    next to the target and immediately undo themselves, so no relabeling
    persists (the final mapping is the identity).
    """
    if not graph.is_connected:
        raise DisconnectedGraphError("coupling graph is not connected")
    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind is not GateKind.CNOT or graph.is_legal_cnot(
                g.qubits[0], g.qubits[1], respect_direction=False):
            out.append(g)
            continue
        control, target = g.qubits
        path = graph.shortest_path(control, target)
        hops = list(zip(path[:-2], path[1:-1]))  # control's walk to the neighbour
        for a, b in hops:
            out += [cx(a, b), cx(b, a), cx(a, b)]
        out.append(cx(path[-2], target))
        for a, b in reversed(hops):
            out += [cx(a, b), cx(b, a), cx(a, b)]
    return circuit.with_gates(out)
