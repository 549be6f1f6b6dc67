"""Successive shortest paths with node potentials."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .. import paths
from ..circuits import Circuit, PathVariant, path_circuit
from ..geometry import zero_pseudoflow_vertex
from ..network import MaxFlow, Network, NetworkError, residual_arcs
from ..pivot import TraceBuilder, WalkTrace, build_sspa_objective
from .common import InfeasibleInstanceError

PAIRINGS = ("key", "pair-lex")


@dataclass(frozen=True)
class SspaResult:
    trace: WalkTrace
    flow: tuple[Fraction, ...]
    cost: Fraction
    pairs: tuple[tuple[int, int], ...]


def run_sspa(net: Network, pairing: str = "key", potentials: bool = True,
             check_reduced_costs: bool = True) -> SspaResult:
    """Augment along globally shortest excess-to-deficit paths until balanced.

    Every iteration computes distances from all excess nodes and keeps the
    pairs (k, l) whose path cost is globally smallest. ``pairing`` breaks ties:
    ``"key"`` takes the path circuit with the smallest canonical key (the
    pivot engine's tie-break), ``"pair-lex"`` the smallest (k, l) first.
    With ``potentials`` the searches run Dijkstra on reduced costs; without,
    Bellman-Ford on the original costs. Both pick the same paths.
    """
    if isinstance(net.kind, MaxFlow):
        raise NetworkError("shortest path algorithm needs a min-cost or assignment instance")
    if pairing not in PAIRINGS:
        raise ValueError(f"pairing must be one of {PAIRINGS}")
    x = [Fraction(0)] * net.m
    excess = list(net.balances)
    pi = [Fraction(0)] * (net.n + 1)
    trace = TraceBuilder(zero_pseudoflow_vertex(net), build_sspa_objective(net))
    pairs = []

    while any(e > 0 for e in excess):
        arcs = residual_arcs(net, x)
        if potentials:
            def weight(r, pi=pi):
                return r.cost - pi[r.tail] + pi[r.head]
            if check_reduced_costs and any(weight(r) < 0 for r in arcs):
                raise AssertionError("reduced costs went negative")
        else:
            def weight(r):
                return r.cost
        supply = [k for k in net.nodes if excess[k - 1] > 0]
        demand = [l for l in net.nodes if excess[l - 1] < 0]
        dists = {}
        options = []  # (true cost, k, l)
        for k in supply:
            if potentials:
                d = paths.dijkstra(net.n, arcs, k, weight)
            else:
                d = paths.bellman_ford(net.n, arcs, k, weight)
            dists[k] = d
            for l in demand:
                if d[l] is not None:
                    true = d[l] + pi[k] - pi[l] if potentials else d[l]
                    options.append((true, k, l))
        if not options:
            raise InfeasibleInstanceError("no residual path from an excess node to a deficit node")
        best = min(o[0] for o in options)
        chosen = None
        for _, k, l in sorted(o for o in options if o[0] == best):
            tight = paths.tight_arcs(arcs, dists[k], weight)
            path = paths.min_key_path(net.n, tight, k, l)
            g = path_circuit(net, paths.as_arc_sequence(path), PathVariant.MINUS_PLUS)
            if chosen is None or (pairing == "key" and g.key < chosen[0].key):
                chosen = (g, k, l, path)
        g, k, l, path = chosen

        if potentials:
            d = dists[k]
            cap = d[l]
            for i in net.nodes:
                pi[i] -= cap if d[i] is None else min(d[i], cap)

        delta = min(excess[k - 1], -excess[l - 1], paths.bottleneck(path))
        for r in path:
            x[r.arc - 1] += r.direction * delta
        excess[k - 1] -= delta
        excess[l - 1] += delta
        pairs.append((k, l))
        trace.add(g, delta)

    cost = sum((a.cost * x[a.id - 1] for a in net.arcs), Fraction(0))
    return SspaResult(trace.build(), tuple(x), cost, tuple(pairs))
