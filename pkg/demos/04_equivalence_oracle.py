"""The statevector oracle that certifies every rewrite.

Qubit 0 is the least significant bit of the amplitude index.  Equivalence
is judged on a probe set -- every basis state on small registers, seeded
random basis and product states on larger ones -- after permuting the
reference state by the reported relabeling.  Everything is modulo global
phase.
"""
import numpy as np

import qlayout as ql

# Build a Bell pair; peek at the state.
bell = ql.Circuit(2, 0, (ql.h(0), ql.cx(0, 1)))
state = ql.simulate(bell)
print("bell state amplitudes:", np.round(state, 6))

# A relabeled variant is only equivalent under its mapping.
swapped = ql.apply_mapping(bell, {0: 1, 1: 0})
mapping = ql.QubitMapping.swap(0, 1)
print("without mapping:", ql.equivalent(bell, swapped, tol=1e-9))
print("with mapping (both ends, it is a whole-program rename):",
      ql.equivalent(bell, swapped, mapping, 1e-9, initial_map=mapping))

# The oracle notices a single mangled angle (0.01 rad shifts the worst
# probe fidelity by ~1e-5, well past the 1e-6 tolerance)...
good = ql.gen_random_circuit(4, 2, seed=5)
gates = list(good.gates)
idx = next(i for i, g in enumerate(gates) if g.kind is ql.GateKind.U3)
broken_gate = ql.u3(gates[idx].params[0] + 0.01, *gates[idx].params[1:], gates[idx].qubits[0])
bad = good.with_gates(gates[:idx] + [broken_gate] + gates[idx + 1:])
print("\ncorrupted angle detected:", not ql.equivalent(good, bad, tol=1e-6))

# ... and even a pure phase gate, which no basis-state probe alone can see.
phased = good.with_gates(good.gates + (ql.u1(0.1, 0),))
print("stray u1(0.1) detected:", not ql.equivalent(good, phased, tol=1e-6))

# Worst-probe fidelity is the quantity behind the verdict.
worst = ql.probe_fidelity(good, phased)
print(f"worst probe fidelity against the phased copy: {worst:.6f}")

# Routing results verify with their reported mapping, end to end.
graph = ql.make_layout("linear", 4)
result = ql.transpile(good, graph)
print("\ntranspiled output certified:",
      ql.equivalent(good, result.circuit, result.final_mapping, 1e-6,
                    initial_map=result.initial_mapping))
