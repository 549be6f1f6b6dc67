"""Network flow algorithms as circuit walks on the pseudoflow polyhedron.

All arithmetic is exact (``fractions.Fraction``).
"""

from .algorithms import (InfeasibleInstanceError, run_gapa, run_hungarian, run_preflow_push,
                         run_sspa)
from .circuits import (Circuit, CircuitError, PathVariant, SizeGuardError, cycle_circuit,
                       enumerate_circuits, max_step, oracle_circuits, path_circuit,
                       trivial_circuit)
from .geometry import (FaceSpec, InfeasiblePointError, PseudoflowPoint, check_feasible, face_for,
                       is_edge_step, is_vertex, point_from_flow, zero_pseudoflow_vertex)
from .network import (Arc, Assignment, MaxFlow, MinCost, Network, NetworkError, ParseError,
                      assignment_to_network, build_residual, load_network, make_network,
                      parse_network, serialize_network)
from .pivot import (Objective, PivotRule, WalkTrace, augment, build_hm_order_objective,
                    build_maxflow_objective, build_sspa_objective)
from .verify import classify_walk, edge_universality, verify_replication

__version__ = "0.1.0"

__all__ = [
    "Arc", "Assignment", "Circuit", "CircuitError", "FaceSpec", "InfeasibleInstanceError",
    "InfeasiblePointError", "MaxFlow", "MinCost", "Network", "NetworkError", "Objective",
    "ParseError", "PathVariant", "PivotRule", "PseudoflowPoint", "SizeGuardError", "WalkTrace",
    "assignment_to_network", "augment", "build_hm_order_objective", "build_maxflow_objective",
    "build_residual", "build_sspa_objective", "check_feasible", "classify_walk", "cycle_circuit",
    "edge_universality", "enumerate_circuits", "face_for", "is_edge_step", "is_vertex",
    "load_network", "make_network", "max_step", "oracle_circuits", "parse_network",
    "path_circuit", "point_from_flow", "run_gapa", "run_hungarian", "run_preflow_push",
    "run_sspa", "serialize_network", "trivial_circuit", "verify_replication",
    "zero_pseudoflow_vertex",
]
