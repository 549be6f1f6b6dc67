"""Generic preflow-push (push-relabel) maximum flow."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from ..circuits import PathVariant, path_circuit
from ..geometry import zero_pseudoflow_vertex
from ..network import FORWARD, MaxFlow, Network, NetworkError, residual_arcs
from ..pivot import TraceBuilder, WalkTrace, build_maxflow_objective

ActiveRule = Union[str, Sequence[int]]


@dataclass(frozen=True)
class PreflowResult:
    trace: WalkTrace
    value: Fraction
    flow: tuple[Fraction, ...]
    labels: tuple[int, ...]


def _exact_labels(net: Network, x) -> list[int]:
    """Hop distance to the sink in the residual network; n when unreachable."""
    s, t = net.kind.source, net.kind.sink
    d = [net.n] * (net.n + 1)
    d[t] = 0
    into: dict[int, list[int]] = {}
    for r in residual_arcs(net, x):
        into.setdefault(r.head, []).append(r.tail)
    queue = deque([t])
    seen = {t}
    while queue:
        v = queue.popleft()
        for u in into.get(v, ()):
            if u not in seen:
                seen.add(u)
                d[u] = d[v] + 1
                queue.append(u)
    d[s] = net.n
    return d


def run_preflow_push(net: Network, active_rule: ActiveRule = "lowest-id",
                     max_operations: int | None = None) -> PreflowResult:
    """Push-relabel from the saturated source arcs.

    ``active_rule`` picks the node to process: ``"lowest-id"``, ``"fifo"``, or
    an explicit priority sequence of node ids (unlisted nodes follow by id).
    Admissible arcs are scanned by arc id. Pushes become path circuit steps;
    relabels become ``relabel`` events.
    """
    if not isinstance(net.kind, MaxFlow):
        raise NetworkError("preflow-push needs a max-flow instance")
    if isinstance(active_rule, str):
        if active_rule not in ("lowest-id", "fifo"):
            raise ValueError("active rule must be 'lowest-id', 'fifo' or a node sequence")
        priority = None
    else:
        priority = [int(v) for v in active_rule]
        rank = {v: i for i, v in enumerate(priority)}
    s, t = net.kind.source, net.kind.sink
    x = [Fraction(0)] * net.m
    excess = [Fraction(0)] * (net.n + 1)
    trace = TraceBuilder(zero_pseudoflow_vertex(net), build_maxflow_objective(net))
    d = _exact_labels(net, x)
    queue: deque[int] = deque()

    def activate(v: int) -> None:
        if v not in (s, t) and v not in queue:
            queue.append(v)

    for a in net.arcs:
        if a.tail == s and a.capacity > 0:
            x[a.id - 1] = a.capacity
            excess[a.head] += a.capacity
            excess[s] -= a.capacity
            trace.add(path_circuit(net, [(a.id, FORWARD)], PathVariant.PLUS_MINUS), a.capacity)
            activate(a.head)

    limit = max_operations if max_operations is not None else 4 * net.n ** 2 * (net.m + 1) + 100
    for _ in range(limit):
        active = [v for v in net.nodes if v not in (s, t) and excess[v] > 0]
        if not active:
            break
        if active_rule == "fifo":
            i = queue[0]
        elif priority is None:
            i = active[0]
        else:
            i = min(active, key=lambda v: (rank.get(v, len(priority)), v))
        out = [r for r in residual_arcs(net, x) if r.tail == i]
        admissible = next((r for r in out if d[i] == d[r.head] + 1), None)
        if admissible is None:
            old = d[i]
            d[i] = min(d[r.head] + 1 for r in out)
            trace.event(type="relabel", node=i, old=old, new=d[i])
            if active_rule == "fifo":
                queue.rotate(-1)
            continue
        r = admissible
        delta = min(excess[i], r.residual)
        x[r.arc - 1] += r.direction * delta
        excess[i] -= delta
        excess[r.head] += delta
        variant = PathVariant.MINUS_PLUS if r.head == s else PathVariant.MINUS_MINUS
        trace.add(path_circuit(net, [(r.arc, r.direction)], variant), delta)
        if active_rule == "fifo":
            if excess[i] == 0:
                queue.popleft()
            activate(r.head)
    else:
        raise RuntimeError("preflow-push exceeded its operation bound")
    return PreflowResult(trace.build(), excess[t], tuple(x), tuple(d[1:]))
