"""Walk classification and replication checks between algorithm runs and pivot runs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algorithms import run_gapa, run_hungarian, run_preflow_push, run_sspa
from .circuits import Circuit, in_kernel, max_step
from .geometry import (FaceSpec, check_feasible, face_for, is_edge_step, is_vertex,
                       zero_pseudoflow_vertex)
from .network import Assignment, MaxFlow, Network, NetworkError, cost_matrix
from .pivot import (PivotRule, WalkTrace, augment, build_hm_order_objective,
                    build_maxflow_objective, build_sspa_objective)

EDGE_WALK, VERTEX_WALK, GENERAL_WALK = "edge", "vertex", "general"
EDGE_STEP, NON_EDGE_STEP, NON_VERTEX_STEP = "edge", "non-edge", "non-vertex"


class InvalidTraceError(ValueError):
    """A trace that is not a maximal-step circuit walk."""


@dataclass(frozen=True)
class WalkClass:
    kind: str
    labels: tuple[str, ...]


def validate_trace(net: Network, trace: WalkTrace, face: FaceSpec | None = None,
                   require_vertex_start: bool = True) -> None:
    """Raise InvalidTraceError unless every step is a maximal feasible circuit step."""
    point = trace.start
    problems = check_feasible(net, point, face)
    if problems:
        raise InvalidTraceError(f"start point infeasible: {problems[0].constraint}")
    if require_vertex_start and not is_vertex(net, point):
        raise InvalidTraceError("walk does not start at a vertex")
    for k, step in enumerate(trace.steps, start=1):
        g = step.circuit
        if not in_kernel(net, g):
            raise InvalidTraceError(f"step {k}: direction is not in the kernel")
        try:
            g.kind
        except ValueError as exc:
            raise InvalidTraceError(f"step {k}: {exc}") from None
        alpha = max_step(net, point, g, face)
        if step.alpha <= 0 or alpha is None or step.alpha != alpha:
            raise InvalidTraceError(f"step {k}: length {step.alpha} is not the maximal step {alpha}")
        point = point.step(g, step.alpha)
        if point != step.point_after:
            raise InvalidTraceError(f"step {k}: recorded point differs from point + alpha*g")


def classify_walk(net: Network, trace: WalkTrace, face: FaceSpec | None = None) -> WalkClass:
    """Label every step and return edge, vertex or general walk."""
    validate_trace(net, trace, face)
    points = trace.points
    vertex = [is_vertex(net, p) for p in points]
    labels = []
    for k in range(len(trace.steps)):
        if not (vertex[k] and vertex[k + 1]):
            labels.append(NON_VERTEX_STEP)
        elif is_edge_step(net, points[k], points[k + 1]):
            labels.append(EDGE_STEP)
        else:
            labels.append(NON_EDGE_STEP)
    if not all(vertex):
        kind = GENERAL_WALK
    elif all(lab == EDGE_STEP for lab in labels):
        kind = EDGE_WALK
    else:
        kind = VERTEX_WALK
    return WalkClass(kind, tuple(labels))


@dataclass(frozen=True)
class Divergence:
    step: int                       # 0-based index of the first differing step
    circuit_a: Circuit | None
    circuit_b: Circuit | None


@dataclass(frozen=True)
class ReplicationReport:
    algorithm: str
    equal: bool
    divergence: Divergence | None
    walk_class_a: str
    walk_class_b: str
    steps: int
    trace_a: WalkTrace
    trace_b: WalkTrace


ALGORITHMS = ("sspa", "gapa", "sapa", "hm")
MODES = ("point-sequence", "circuit-sequence")


def _compare(a: WalkTrace, b: WalkTrace, mode: str) -> Divergence | None:
    if mode == "point-sequence":
        sa, sb = a.points, b.points
        offset = 1
    elif mode == "circuit-sequence":
        sa = [(s.circuit, s.alpha) for s in a.steps]
        sb = [(s.circuit, s.alpha) for s in b.steps]
        offset = 0
    else:
        raise ValueError(f"mode must be one of {MODES}")
    if mode == "point-sequence" and a.start != b.start:
        return Divergence(0, None, None)
    for k in range(max(len(sa), len(sb))):
        if k >= len(sa) or k >= len(sb) or sa[k] != sb[k]:
            idx = max(k - offset, 0)
            ca = a.steps[idx].circuit if idx < len(a.steps) else None
            cb = b.steps[idx].circuit if idx < len(b.steps) else None
            return Divergence(idx, ca, cb)
    return None


def verify_replication(net: Network, algorithm: str, mode: str = "point-sequence",
                       structured: bool = True, path_rule: str = "bfs") -> ReplicationReport:
    """Run an algorithm and the matching circuit augmentation, then compare walks.

    sspa: shortest path objective with Dantzig's rule. gapa: max-flow objective
    with first-improving candidates led by the ``path_rule`` path. sapa: max-flow
    objective with steepest ascent. hm: order objective built from the
    observed matching order, with Dantzig's rule.
    """
    algorithm = algorithm.lower()
    if algorithm not in ALGORITHMS:
        raise ValueError(f"algorithm must be one of {ALGORITHMS}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    cand_mode = "structured" if structured else "exhaustive"
    start = zero_pseudoflow_vertex(net)
    if algorithm == "sspa":
        if isinstance(net.kind, MaxFlow):
            raise NetworkError("sspa replication needs a min-cost or assignment instance")
        trace_a = run_sspa(net).trace
        face = face_for(net, "sspa")
        trace_b = augment(net, face, build_sspa_objective(net), PivotRule.DANTZIG, start,
                          mode=cand_mode)
    elif algorithm in ("gapa", "sapa"):
        if not isinstance(net.kind, MaxFlow):
            raise NetworkError("augmenting path replication needs a max-flow instance")
        rule = path_rule if algorithm == "gapa" else "bfs"
        trace_a = run_gapa(net, rule).trace
        face = face_for(net, "gapa")
        pivot = PivotRule.FIRST_IMPROVING if algorithm == "gapa" else PivotRule.STEEPEST_ASCENT
        trace_b = augment(net, face, build_maxflow_objective(net), pivot, start,
                          mode=cand_mode, path_rule=rule)
    else:
        if not isinstance(net.kind, Assignment):
            raise NetworkError("Hungarian replication needs an assignment instance")
        result = run_hungarian(cost_matrix(net))
        trace_a = result.trace
        face = face_for(net, "hm")
        objective = build_hm_order_objective(net, result.order) if result.order else \
            build_sspa_objective(net)
        trace_b = augment(net, face, objective, PivotRule.DANTZIG, start, mode=cand_mode)
    divergence = _compare(trace_a, trace_b, mode)
    return ReplicationReport(
        algorithm, divergence is None, divergence,
        classify_walk(net, trace_a, face).kind, classify_walk(net, trace_b, face).kind,
        len(trace_a.steps), trace_a, trace_b)


def run_algorithm(net: Network, algorithm: str, **options) -> WalkTrace:
    """Trace of a named combinatorial algorithm (convenience for the CLI)."""
    runners: dict[str, Callable[[], WalkTrace]] = {
        "sspa": lambda: run_sspa(net, **options).trace,
        "gapa": lambda: run_gapa(net, **options).trace,
        "sapa": lambda: run_gapa(net, "bfs").trace,
        "hungarian": lambda: run_hungarian(cost_matrix(net)).trace,
        "preflow-push": lambda: run_preflow_push(net, **options).trace,
    }
    if algorithm not in runners:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return runners[algorithm]()


@dataclass(frozen=True)
class UniversalityReport:
    vertices: int
    steps: int
    failures: tuple[tuple, ...]

    @property
    def holds(self) -> bool:
        return not self.failures


def edge_universality(net: Network, face: FaceSpec | None, limit: int = 10000) -> UniversalityReport:
    """Take every feasible maximal circuit step from every reachable vertex.

    Starts at the zero-pseudoflow vertex and explores breadth first. A failure
    is a step whose end is not a vertex or that is not an edge; unbounded
    directions are failures as well.
    """
    from .circuits import enumerate_circuits, is_feasible_direction
    start = zero_pseudoflow_vertex(net)
    seen = {start}
    frontier = [start]
    steps = 0
    failures = []
    circuits = enumerate_circuits(net)
    while frontier:
        point = frontier.pop(0)
        for g in circuits:
            if not is_feasible_direction(net, point, g, face):
                continue
            alpha = max_step(net, point, g, face)
            steps += 1
            if alpha is None:
                failures.append((point, g, "unbounded"))
                continue
            q = point.step(g, alpha)
            if not is_edge_step(net, point, q):
                failures.append((point, g, "non-edge"))
                continue
            if q not in seen:
                if len(seen) >= limit:
                    raise RuntimeError("vertex exploration limit reached")
                seen.add(q)
                frontier.append(q)
    return UniversalityReport(len(seen), steps, tuple(failures))


def dantzig_consistent(net: Network, trace: WalkTrace, objective, face: FaceSpec | None,
                       mode: str = "structured") -> list[int]:
    """Steps whose circuit is not among the Dantzig maximizers at its start point.

    Weaker than trace equality: it accepts any choice among equally improving
    circuits, so it isolates tie-breaking from the replication property.
    """
    from .pivot import candidate_circuits
    bad = []
    point = trace.start
    for k, step in enumerate(trace.steps):
        cands = candidate_circuits(net, point, face, mode, objective)
        best = max((objective.improvement(g) for g in cands), default=None)
        if best is None or objective.improvement(step.circuit) != best:
            bad.append(k)
        point = step.point_after
    return bad
