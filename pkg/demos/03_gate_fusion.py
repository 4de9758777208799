"""Single-qubit gate fusion.

Multi-qubit gates cut each qubit's timeline into subintervals; inside one
subinterval any run of u1/u2/u3/h gates multiplies out to a single 2x2
unitary, hence a single gate.  The rewrite engine is the Y-Z-to-Z-Y
transform: Ry(t1) Rz(mid) Ry(t2) re-expressed as Rz(phi) Ry(theta) Rz(lam).
"""
import numpy as np

import qlayout as ql
from qlayout.ir import mat2_mul, single_qubit_matrix
from qlayout.merge import merge_adjacent, yz_to_zy

# Two arbitrary u3 gates fuse into one.
later, earlier = ql.u3(0.3, 0.7, -0.2, 0), ql.u3(1.1, 0.4, 0.9, 0)
fused = merge_adjacent(later, earlier)
print(f"u3{later.params} applied after u3{earlier.params}")
print(f"  -> {fused.kind.value}{fused.params}")

product = np.array(mat2_mul(single_qubit_matrix(later),
                            single_qubit_matrix(earlier))).reshape(2, 2)
got = np.array(single_qubit_matrix(fused)).reshape(2, 2)
phase = product[0, 0] / got[0, 0]
print(f"  matrix product reproduced up to phase, max error "
      f"{np.abs(product - phase * got).max():.2e}")

# The Z-Y rewrite underneath:
triple = yz_to_zy(0.3, -0.2 + 0.4, 1.1)
print(f"\nyz_to_zy(0.3, 0.2, 1.1) = theta {triple.theta:.6f}, "
      f"phi {triple.phi:.6f}, lam {triple.lam:.6f}")

# Whole-circuit fusion: runs collapse, inverses vanish, blockers hold.
circuit = ql.Circuit(2, 0, (
    ql.h(0), ql.u1(0.5, 0), ql.u2(0.1, 0.2, 0),   # q0 run of three
    ql.u1(0.8, 1), ql.u1(-0.8, 1),                # q1 run cancels exactly
    ql.cx(0, 1),                                  # blocker for both qubits
    ql.u3(0.4, 0.5, 0.6, 0), ql.u1(0.7, 0),       # q0 run of two
))
merged = ql.merge_single_qubit_runs(circuit)
print(f"\nbefore: {len(circuit.gates)} gates, counts {ql.gate_counts(circuit)}")
print(f"after:  {len(merged.gates)} gates, counts {ql.gate_counts(merged)}")
for g in merged.gates:
    args = tuple(round(p, 6) for p in g.params) if g.params else ""
    print(f"  {g.kind.value}{args} on {g.qubits}")

assert ql.equivalent(circuit, merged, tol=1e-9)
assert ql.merge_single_qubit_runs(merged) == merged  # idempotent
print("verified equivalent; a second pass changes nothing")
