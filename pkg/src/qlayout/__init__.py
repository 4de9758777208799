"""qlayout: layout-aware OpenQASM 2.0 transpilation.

Rewrites circuits over the {u1, u2, u3, cx, h} gate set to satisfy an
arbitrary qubit-coupling graph: gate-free global relabeling, SWAP-chain
routing with bounded lookahead, CNOT orientation repair, and single-qubit
gate fusion -- plus a statevector oracle that certifies every rewrite and
a benchmark harness comparing the pipeline against the classic
swap-there-and-back baseline.
"""
from .bench import (
    BenchRecord,
    BenchResult,
    CostModel,
    cost,
    gen_random_circuit,
    run_benchmark,
)
from .coupling import (
    CouplingGraph,
    DisconnectedGraphError,
    LayoutKind,
    coupling_from_json,
    load_coupling,
    make_layout,
)
from .global_adjust import SearchLimits, candidate_mappings, global_adjust
from .ir import (
    Circuit,
    Gate,
    GateKind,
    QubitMapping,
    apply_mapping,
    barrier,
    cx,
    gate_counts,
    h,
    measure,
    u1,
    u2,
    u3,
)
from .merge import ZYTriple, merge_adjacent, merge_single_qubit_runs, yz_to_zy
from .pipeline import PipelineConfig, TranspileResult, transpile, transpile_baseline
from .qasm import QasmError, emit_qasm, parse_qasm
from .routing import (
    LegalityError,
    RouteResult,
    estimate_cost,
    fix_directions,
    local_adjust,
    lookahead_choose,
    naive_route,
    route_circuit,
)
from .sim import brute_force_route_cost, equivalent, probe_fidelity, simulate

__version__ = "0.1.0"

__all__ = [
    "BenchRecord", "BenchResult", "Circuit", "CostModel", "CouplingGraph",
    "DisconnectedGraphError", "Gate", "GateKind", "LayoutKind", "LegalityError",
    "PipelineConfig", "QasmError", "QubitMapping", "RouteResult", "SearchLimits",
    "TranspileResult", "ZYTriple", "apply_mapping", "barrier",
    "brute_force_route_cost", "candidate_mappings", "cost", "coupling_from_json",
    "cx", "emit_qasm", "equivalent", "estimate_cost", "fix_directions",
    "gate_counts", "gen_random_circuit", "global_adjust", "h", "load_coupling",
    "local_adjust", "lookahead_choose", "make_layout", "measure",
    "merge_adjacent", "merge_single_qubit_runs", "naive_route", "parse_qasm",
    "probe_fidelity", "route_circuit", "run_benchmark", "simulate", "transpile",
    "transpile_baseline", "u1", "u2", "u3", "yz_to_zy",
]
