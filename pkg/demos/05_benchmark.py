"""A desk-scale benchmark sweep.

Random layered circuits (3-CNOT two-qubit blocks with random u3 angles)
are transpiled twice per cell -- full pipeline vs the swap-there-and-back
baseline -- verified on the statevector oracle, and aggregated: per-cell
baseline/pipeline cost ratios and per-layout means of each scheme's cost
against the original circuit.

The CLI equivalent of this script:

    qlayout bench --layouts linear,circle,central,neighbour \
        --qubits 3..6 --depths 1..4 --trials 3 --seed 11 \
        --csv bench.csv --json bench.json
"""
from qlayout.bench import run_benchmark

LAYOUTS = ["linear", "circle", "central", "neighbour"]

result = run_benchmark(LAYOUTS, qubits=range(3, 7), depths=range(1, 5),
                       trials=3, seed=11)
agg = result.aggregates
print(f"records: {agg['records_verified']}/{agg['records_total']} verified\n")

# The time column compares against *this* baseline, which is nearly free
# to compute -- expect values below 1; the routing quality is the point.
print("mean cost ratio against the original circuit (lower is better):")
print(f"{'layout':12s} {'pipeline':>9s} {'baseline':>9s} {'time vs baseline':>17s}")
for layout in LAYOUTS:
    row = agg["per_layout"][layout]
    eff = row["efficiency"]
    timing = f"{1 / eff:15.1f}x" if eff else f"{'n/a':>16s}"
    print(f"{layout:12s} {row['cost_ratio_pipeline']:9.3f} "
          f"{row['cost_ratio_baseline']:9.3f} {timing}")

print("\nper-cell baseline/pipeline cost ratio (rows n, columns depth):")
grid = agg["grid"]["cost"]
depths = sorted({d for row in grid.values() for d in row}, key=int)
print("  n  " + "".join(f"  d={d}  " for d in depths))
for n in sorted(grid, key=int):
    cells = "".join(f"{grid[n].get(d, float('nan')):7.2f}" for d in depths)
    print(f"  {n}  {cells}")
