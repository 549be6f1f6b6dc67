"""Generic augmenting path algorithm (shortest augmenting paths with BFS)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import paths
from ..circuits import PathVariant, path_circuit
from ..geometry import zero_pseudoflow_vertex
from ..network import MaxFlow, Network, NetworkError, residual_arcs
from ..pivot import TraceBuilder, WalkTrace, build_maxflow_objective

PATH_RULES = ("bfs", "dfs")


@dataclass(frozen=True)
class GapaResult:
    trace: WalkTrace
    value: Fraction
    flow: tuple[Fraction, ...]


def run_gapa(net: Network, path_rule: str = "bfs") -> GapaResult:
    """Augment along s-t paths until none is left.

    ``"bfs"`` takes a fewest-arc path (smallest sorted arc list among those);
    ``"dfs"`` the first path a depth-first search finds, scanning residual
    arcs by arc id.
    """
    if not isinstance(net.kind, MaxFlow):
        raise NetworkError("augmenting path algorithm needs a max-flow instance")
    if path_rule not in PATH_RULES:
        raise ValueError(f"path rule must be one of {PATH_RULES}")
    s, t = net.kind.source, net.kind.sink
    x = [Fraction(0)] * net.m
    trace = TraceBuilder(zero_pseudoflow_vertex(net), build_maxflow_objective(net))
    value = Fraction(0)
    while True:
        arcs = residual_arcs(net, x)
        if path_rule == "bfs":
            path = paths.min_key_path(net.n, arcs, s, t)
        else:
            path = paths.dfs_path(net.n, arcs, s, t)
        if not path:
            break
        delta = paths.bottleneck(path)
        for r in path:
            x[r.arc - 1] += r.direction * delta
        value += delta
        trace.add(path_circuit(net, paths.as_arc_sequence(path), PathVariant.PLUS_MINUS), delta)
    return GapaResult(trace.build(), value, tuple(x))
