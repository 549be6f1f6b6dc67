"""Objectives, pivot rules and the maximal-step circuit augmentation loop."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import paths
from .circuits import (Circuit, PathVariant, enumerate_circuits, is_feasible_direction,
                       max_step, path_circuit)
from .geometry import (S_MINUS, S_PLUS, X, FaceSpec, InfeasiblePointError, PseudoflowPoint,
                       check_feasible, is_vertex)
from .network import Assignment, MaxFlow, Network, NetworkError, ResidualArc, residual_arcs

MINIMIZE, MAXIMIZE = "minimize", "maximize"
MAXFLOW_PENALTY = 4


@dataclass(frozen=True)
class Objective:
    cx: tuple[Fraction, ...]
    cs_plus: tuple[Fraction, ...]
    cs_minus: tuple[Fraction, ...]
    sense: str = MINIMIZE

    def __post_init__(self):
        if self.sense not in (MINIMIZE, MAXIMIZE):
            raise ValueError(f"sense must be {MINIMIZE!r} or {MAXIMIZE!r}")
        if len(self.cs_plus) != len(self.cs_minus):
            raise ValueError("slack cost vectors differ in length")

    def check(self, net: Network) -> None:
        if (len(self.cx), len(self.cs_plus)) != (net.m, net.n):
            raise ValueError("objective does not match the network dimensions")

    def value(self, point: PseudoflowPoint) -> Fraction:
        return (sum((c * v for c, v in zip(self.cx, point.x)), Fraction(0))
                + sum((c * v for c, v in zip(self.cs_plus, point.s_plus)), Fraction(0))
                + sum((c * v for c, v in zip(self.cs_minus, point.s_minus)), Fraction(0)))

    def improvement(self, g: Circuit) -> Fraction:
        """Objective gain per unit step along g (positive means improving)."""
        d = g.dot(self)
        return d if self.sense == MAXIMIZE else -d

    def arc_weight(self, r: ResidualArc) -> Fraction:
        """Length of a residual arc: the objective loss of one unit along it."""
        c = self.cx[r.arc - 1] * r.direction
        return c if self.sense == MINIMIZE else -c

    def to_json(self) -> dict:
        def block(vals):
            return {str(i): str(v) for i, v in enumerate(vals, start=1)}
        return {"x": block(self.cx), "s_plus": block(self.cs_plus),
                "s_minus": block(self.cs_minus), "sense": self.sense}

    @classmethod
    def from_json(cls, data, net: Network) -> "Objective":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)

        def block(name, size):
            vals = [Fraction(0)] * size
            for key, v in data.get(name, {}).items():
                k = int(key)
                if not 1 <= k <= size:
                    raise ValueError(f"objective entry {name}[{key}] out of range")
                vals[k - 1] = Fraction(str(v))
            return tuple(vals)

        obj = cls(block("x", net.m), block("s_plus", net.n), block("s_minus", net.n),
                  data.get("sense", MINIMIZE))
        return obj


def build_sspa_objective(net: Network) -> Objective:
    """Arc costs plus a uniform slack penalty M = 1 + sum of arc costs."""
    if isinstance(net.kind, MaxFlow):
        raise NetworkError("shortest path objective needs a min-cost or assignment instance")
    big = 1 + sum((a.cost for a in net.arcs), Fraction(0))
    return Objective(tuple(a.cost for a in net.arcs), (big,) * net.n, (big,) * net.n, MINIMIZE)


def build_maxflow_objective(net: Network, penalty: int = MAXFLOW_PENALTY) -> Objective:
    """Reward +1 on s+ at the source and s- at the sink, -M on every other slack."""
    if not isinstance(net.kind, MaxFlow):
        raise NetworkError("max-flow objective needs a max-flow instance")
    s, t = net.kind.source, net.kind.sink
    cs_plus = tuple(Fraction(1) if i == s else Fraction(-penalty) for i in net.nodes)
    cs_minus = tuple(Fraction(1) if i == t else Fraction(-penalty) for i in net.nodes)
    return Objective((Fraction(0),) * net.m, cs_plus, cs_minus, MAXIMIZE)


def build_hm_order_objective(net: Network, order: Sequence[tuple[int, int]]) -> Objective:
    """Slack penalties that make pair i of ``order`` worth 2D less than pair i-1.

    D = 1 + sum of costs and M = 2D(|L| + 1), so the earliest unmatched pair
    always carries the largest penalty reduction.
    """
    kind = net.kind
    if not isinstance(kind, Assignment):
        raise NetworkError("order objective needs an assignment instance")
    lefts = [p[0] for p in order]
    rights = [p[1] for p in order]
    if sorted(lefts) != sorted(kind.left) or sorted(rights) != sorted(kind.right):
        raise ValueError("order must pair every left node with a distinct right node")
    d = 1 + sum((a.cost for a in net.arcs), Fraction(0))
    big = 2 * d * (len(kind.left) + 1)
    cs_plus = [big] * net.n
    cs_minus = [big] * net.n
    for i, (l, t) in enumerate(order, start=1):
        cs_plus[t - 1] = big - 2 * d * i
        cs_minus[l - 1] = big - 2 * d * i
    return Objective(tuple(a.cost for a in net.arcs), tuple(cs_plus), tuple(cs_minus), MINIMIZE)


# --- pivot rules ----------------------------------------------------------

class PivotRule(str, enum.Enum):
    DANTZIG = "dantzig"
    STEEPEST_ASCENT = "steepest"
    FIRST_IMPROVING = "first"


def select_circuit(candidates: Sequence[Circuit], point: PseudoflowPoint, objective: Objective,
                   rule: PivotRule | str) -> Circuit | None:
    """Pick the next circuit; ties go to the smallest canonical key."""
    rule = PivotRule(rule)
    if rule is PivotRule.FIRST_IMPROVING:
        for g in candidates:
            if objective.improvement(g) > 0:
                return g
        return None
    best = None
    best_score = None
    for g in candidates:
        gain = objective.improvement(g)
        if gain <= 0:
            continue
        score = gain if rule is PivotRule.DANTZIG else gain / g.bg_norm()
        if best is None or score > best_score or (score == best_score and g.key < best.key):
            best, best_score = g, score
    return best


# --- candidates -----------------------------------------------------------

STRUCTURED, EXHAUSTIVE = "structured", "exhaustive"


def _usable(face: FaceSpec | None, cls_: int, node: int) -> bool:
    return face is None or not face.is_pinned(cls_, node)


def candidate_circuits(net: Network, point: PseudoflowPoint, face: FaceSpec | None,
                       mode: str = STRUCTURED, objective: Objective | None = None,
                       path_rule: str = "bfs", guard: int | None = None) -> list[Circuit]:
    """Feasible circuits at ``point`` inside ``face``.

    Exhaustive mode filters the full enumeration (canonical order). Structured
    mode builds the circuits that can win for the penalty objectives:

    * for each slack pair (s-_k > 0, s+_l > 0) the shortest k-l residual path,
      decreasing both slacks;
    * for max-flow instances the fewest-arc and the depth-first s-t paths,
      increasing s+_s and s-_t (the ``path_rule`` one first);
    * a negative residual cycle when label correcting finds one;
    * feasible trivial circuits.

    Path lengths come from the objective's arc costs (zero when no objective
    is given).
    """
    if mode == EXHAUSTIVE:
        return [g for g in enumerate_circuits(net, guard)
                if is_feasible_direction(net, point, g, face)]
    if mode != STRUCTURED:
        raise ValueError(f"unknown candidate mode {mode!r}")
    weight = objective.arc_weight if objective is not None else (lambda r: Fraction(0))
    arcs = residual_arcs(net, point.x)
    out: list[Circuit] = []

    if isinstance(net.kind, MaxFlow):
        s, t = net.kind.source, net.kind.sink
        if _usable(face, S_PLUS, s) and _usable(face, S_MINUS, t):
            bfs = paths.min_key_path(net.n, arcs, s, t)
            dfs = paths.dfs_path(net.n, arcs, s, t)
            found = [bfs, dfs] if path_rule == "bfs" else [dfs, bfs]
            for p in found:
                if p:
                    out.append(path_circuit(net, paths.as_arc_sequence(p), PathVariant.PLUS_MINUS))

    cycle = paths.find_negative_cycle(net.n, arcs, weight)
    sources = [k for k in net.nodes if point.s_minus[k - 1] > 0 and _usable(face, S_MINUS, k)]
    sinks = [l for l in net.nodes if point.s_plus[l - 1] > 0 and _usable(face, S_PLUS, l)]
    if cycle is None:
        for k in sources:
            dist = paths.bellman_ford(net.n, arcs, k, weight)
            tight = paths.tight_arcs(arcs, dist, weight)
            for l in sinks:
                if l == k or dist[l] is None:
                    continue
                p = paths.min_key_path(net.n, tight, k, l)
                out.append(path_circuit(net, paths.as_arc_sequence(p), PathVariant.MINUS_PLUS))
    else:
        out.append(_cycle_to_circuit(cycle))

    for i in net.nodes:
        if _usable(face, S_PLUS, i) and _usable(face, S_MINUS, i):
            out.append(Circuit(((S_PLUS, i, 1), (S_MINUS, i, 1))))
            if point.s_plus[i - 1] > 0 and point.s_minus[i - 1] > 0:
                out.append(Circuit(((S_PLUS, i, -1), (S_MINUS, i, -1))))

    unique, seen = [], set()
    for g in out:
        if g not in seen and is_feasible_direction(net, point, g, face):
            seen.add(g)
            unique.append(g)
    return unique


def _cycle_to_circuit(cycle: Sequence[ResidualArc]) -> Circuit:
    return Circuit(tuple((X, r.arc, r.direction) for r in cycle))


# --- the walk -------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    circuit: Circuit
    alpha: Fraction
    point_after: PseudoflowPoint
    objective_after: Fraction


OPTIMAL, STALLED, UNBOUNDED = "optimal", "stalled", "unbounded"


@dataclass(frozen=True)
class WalkTrace:
    start: PseudoflowPoint
    steps: tuple[Step, ...] = ()
    events: tuple[dict, ...] = ()
    status: str = OPTIMAL

    @property
    def points(self) -> list[PseudoflowPoint]:
        return [self.start] + [s.point_after for s in self.steps]

    @property
    def circuits(self) -> list[Circuit]:
        return [s.circuit for s in self.steps]

    @property
    def final(self) -> PseudoflowPoint:
        return self.steps[-1].point_after if self.steps else self.start


class TraceBuilder:
    """Accumulates steps from a known start point."""

    def __init__(self, start: PseudoflowPoint, objective: Objective | None = None):
        self.start = start
        self.point = start
        self.objective = objective
        self.steps: list[Step] = []
        self.events: list[dict] = []

    def add(self, circuit: Circuit, alpha) -> PseudoflowPoint:
        alpha = Fraction(alpha)
        self.point = self.point.step(circuit, alpha)
        value = self.objective.value(self.point) if self.objective is not None else Fraction(0)
        self.steps.append(Step(circuit, alpha, self.point, value))
        return self.point

    def event(self, **fields) -> None:
        fields.setdefault("step", len(self.steps))
        self.events.append(fields)

    def build(self, status: str = OPTIMAL) -> WalkTrace:
        return WalkTrace(self.start, tuple(self.steps), tuple(self.events), status)


def augment(net: Network, face: FaceSpec | None, objective: Objective, rule: PivotRule | str,
            start: PseudoflowPoint, step_limit: int = 1000, mode: str = STRUCTURED,
            path_rule: str = "bfs",
            candidates: Callable[[PseudoflowPoint], Sequence[Circuit]] | None = None) -> WalkTrace:
    """Circuit augmentation with maximal steps from the vertex ``start``."""
    objective.check(net)
    report = check_feasible(net, start, face)
    if report:
        raise InfeasiblePointError("start point infeasible: "
                                   + ", ".join(v.constraint for v in report))
    if not is_vertex(net, start):
        raise InfeasiblePointError("a circuit walk must start at a vertex")
    rule = PivotRule(rule)
    trace = TraceBuilder(start, objective)
    point = start
    for count in range(step_limit + 1):
        if candidates is not None:
            cands = candidates(point)
        else:
            cands = candidate_circuits(net, point, face, mode, objective, path_rule)
        g = select_circuit(cands, point, objective, rule)
        if g is None:
            return trace.build(OPTIMAL)
        if count == step_limit:
            break
        alpha = max_step(net, point, g, face)
        if alpha is None:
            return trace.build(UNBOUNDED)
        point = trace.add(g, alpha)
    return trace.build(STALLED)


def with_objective(trace: WalkTrace, objective: Objective) -> WalkTrace:
    """Same walk with objective values recomputed under ``objective``."""
    steps = tuple(Step(s.circuit, s.alpha, s.point_after, objective.value(s.point_after))
                  for s in trace.steps)
    return WalkTrace(trace.start, steps, trace.events, trace.status)
