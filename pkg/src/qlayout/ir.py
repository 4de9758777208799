"""Circuit intermediate representation.

The gate set is the OpenQASM 2.0 u-family plus CNOT: u1/u2/u3 carry one,
two and three Euler angles (radians, double precision), ``h`` is kept as
its own kind even though its matrix equals u2(0, pi), and measure/barrier
are carried through every transformation untouched.

Everything here is immutable; transformations return new values.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping


class GateKind(Enum):
    U1 = "u1"
    U2 = "u2"
    U3 = "u3"
    H = "h"
    CNOT = "cx"
    MEASURE = "measure"
    BARRIER = "barrier"


#: kinds counted as single-qubit gates (measure/barrier are bookkeeping, not gates)
SINGLE_QUBIT_KINDS = frozenset({GateKind.U1, GateKind.U2, GateKind.U3, GateKind.H})

_PARAM_COUNT = {
    GateKind.U1: 1,
    GateKind.U2: 2,
    GateKind.U3: 3,
    GateKind.H: 0,
    GateKind.CNOT: 0,
    GateKind.MEASURE: 0,
    GateKind.BARRIER: 0,
}


@dataclass(frozen=True)
class Gate:
    """One circuit operation.

    ``qubits`` is ``(control, target)`` for CNOT and a single index for
    every other kind except barrier, which may list any number of qubits.
    ``clbit`` is set for measure only.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()
    clbit: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if len(self.params) != _PARAM_COUNT[self.kind]:
            raise ValueError(
                f"{self.kind.value} takes {_PARAM_COUNT[self.kind]} parameter(s), "
                f"got {len(self.params)}"
            )
        if not all(math.isfinite(p) for p in self.params):
            raise ValueError(f"non-finite angle in {self.kind.value} gate")
        if self.kind is GateKind.CNOT:
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError("cx needs two distinct qubits")
        elif self.kind is GateKind.BARRIER:
            if not self.qubits or len(set(self.qubits)) != len(self.qubits):
                raise ValueError("barrier needs a nonempty set of distinct qubits")
        elif len(self.qubits) != 1:
            raise ValueError(f"{self.kind.value} acts on exactly one qubit")
        if (self.clbit is not None) != (self.kind is GateKind.MEASURE):
            raise ValueError("clbit is set exactly for measure gates")

    @property
    def is_single_qubit(self) -> bool:
        return self.kind in SINGLE_QUBIT_KINDS

    def relabeled(self, mapping: "QubitMapping") -> "Gate":
        """Rewrite qubit indices through ``mapping``; clbits stay pinned."""
        return Gate(self.kind, tuple(mapping(q) for q in self.qubits),
                    self.params, self.clbit)


def u1(lam: float, q: int) -> Gate:
    return Gate(GateKind.U1, (q,), (lam,))


def u2(phi: float, lam: float, q: int) -> Gate:
    return Gate(GateKind.U2, (q,), (phi, lam))


def u3(theta: float, phi: float, lam: float, q: int) -> Gate:
    return Gate(GateKind.U3, (q,), (theta, phi, lam))


def h(q: int) -> Gate:
    return Gate(GateKind.H, (q,))


def cx(control: int, target: int) -> Gate:
    return Gate(GateKind.CNOT, (control, target))


def measure(q: int, c: int) -> Gate:
    return Gate(GateKind.MEASURE, (q,), clbit=c)


def barrier(*qubits: int) -> Gate:
    return Gate(GateKind.BARRIER, tuple(qubits))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over ``num_qubits`` qubits and ``num_clbits`` bits.

    Gate order is program order: the first gate acts first, so the circuit
    unitary is the right-to-left product of the gate matrices.
    """

    num_qubits: int
    num_clbits: int = 0
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if any(q < 0 or q >= self.num_qubits for q in g.qubits):
                raise ValueError(f"gate {g.kind.value} touches qubit outside 0..{self.num_qubits - 1}")
            if g.clbit is not None and not (0 <= g.clbit < self.num_clbits):
                raise ValueError(f"measure writes clbit outside 0..{self.num_clbits - 1}")

    def __len__(self) -> int:
        return len(self.gates)

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.num_qubits, self.num_clbits, tuple(gates))

    def widened(self, num_qubits: int) -> "Circuit":
        """Same gates on a register of at least the current size."""
        if num_qubits < self.num_qubits:
            raise ValueError("cannot shrink a circuit")
        return Circuit(num_qubits, self.num_clbits, self.gates)


@dataclass(frozen=True)
class QubitMapping:
    """A relabeling of qubit indices: a bijection where unlisted indices map
    to themselves.  The empty mapping is the identity."""

    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        cleaned = tuple(sorted((int(a), int(b)) for a, b in self.pairs if int(a) != int(b)))
        object.__setattr__(self, "pairs", cleaned)
        srcs = [a for a, _ in cleaned]
        dsts = [b for _, b in cleaned]
        if len(set(srcs)) != len(srcs) or sorted(srcs) != sorted(dsts):
            raise ValueError(f"not a bijection: {dict(cleaned)}")

    @classmethod
    def identity(cls) -> "QubitMapping":
        return cls(())

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "QubitMapping":
        return cls(tuple(d.items()))

    @classmethod
    def swap(cls, a: int, b: int) -> "QubitMapping":
        return cls(((a, b), (b, a)))

    def __call__(self, q: int) -> int:
        for a, b in self.pairs:
            if a == q:
                return b
        return q

    def __bool__(self) -> bool:
        return bool(self.pairs)

    @property
    def is_identity(self) -> bool:
        return not self.pairs

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def domain(self) -> set[int]:
        return {a for a, _ in self.pairs}

    def then(self, later: "QubitMapping") -> "QubitMapping":
        """Composition: apply ``self`` first, then ``later``."""
        keys = self.domain() | later.domain()
        return QubitMapping.from_dict({q: later(self(q)) for q in keys})

    def inverse(self) -> "QubitMapping":
        return QubitMapping(tuple((b, a) for a, b in self.pairs))


def apply_mapping(circuit: Circuit, mapping: QubitMapping | Mapping[int, int],
                  from_gate: int = 0) -> Circuit:
    """Rewrite qubit indices of every gate at position >= ``from_gate``.

    Gates before ``from_gate`` and all classical bits are untouched.
    """
    if not isinstance(mapping, QubitMapping):
        mapping = QubitMapping.from_dict(mapping)
    if not (0 <= from_gate <= len(circuit.gates)):
        raise ValueError(f"from_gate {from_gate} outside 0..{len(circuit.gates)}")
    if mapping.is_identity:
        return circuit
    head = circuit.gates[:from_gate]
    tail = tuple(g.relabeled(mapping) for g in circuit.gates[from_gate:])
    return circuit.with_gates(head + tail)


def gate_counts(circuit: Circuit) -> tuple[int, int]:
    """(CNOT count, single-qubit gate count); measure/barrier excluded."""
    n2 = sum(1 for g in circuit.gates if g.kind is GateKind.CNOT)
    n1 = sum(1 for g in circuit.gates if g.kind in SINGLE_QUBIT_KINDS)
    return n2, n1


# --- 2x2 gate matrices -------------------------------------------------------
#
# Matrices are row-major 4-tuples (a, b, c, d) = [[a, b], [c, d]] of complex
# scalars; plain cmath is much faster than numpy at this size and these are
# the workhorses of gate fusion.

Mat2 = tuple[complex, complex, complex, complex]

IDENTITY_2: Mat2 = (1 + 0j, 0j, 0j, 1 + 0j)


def u1_matrix(lam: float) -> Mat2:
    return (1 + 0j, 0j, 0j, cmath.exp(1j * lam))


def u2_matrix(phi: float, lam: float) -> Mat2:
    s = 1 / math.sqrt(2)
    return (s + 0j, -s * cmath.exp(1j * lam),
            s * cmath.exp(1j * phi), s * cmath.exp(1j * (lam + phi)))


def u3_matrix(theta: float, phi: float, lam: float) -> Mat2:
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    return (c + 0j, -cmath.exp(1j * lam) * s,
            cmath.exp(1j * phi) * s, cmath.exp(1j * (lam + phi)) * c)


def single_qubit_matrix(gate: Gate) -> Mat2:
    """Matrix of a single-qubit gate; h is exactly u2(0, pi)."""
    if gate.kind is GateKind.U1:
        return u1_matrix(*gate.params)
    if gate.kind is GateKind.U2:
        return u2_matrix(*gate.params)
    if gate.kind is GateKind.U3:
        return u3_matrix(*gate.params)
    if gate.kind is GateKind.H:
        return u2_matrix(0.0, math.pi)
    raise ValueError(f"{gate.kind.value} has no 2x2 matrix")


def mat2_mul(x: Mat2, y: Mat2) -> Mat2:
    """Matrix product x @ y."""
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])
