"""Seeded random instances for tests, demos and the ``random`` CLI command."""

from __future__ import annotations

import random

from .network import MaxFlow, Network, assignment_to_network, make_network


def _arcs(rng: random.Random, n: int, m: int, allow_parallel: bool = False):
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    if allow_parallel:
        return [rng.choice(pairs) for _ in range(m)]
    return rng.sample(pairs, min(m, len(pairs)))


def random_network(rng: random.Random, n: int, m: int, allow_parallel: bool = True) -> Network:
    """Unit-capacity, zero-cost, zero-balance network; for circuit tests."""
    return make_network(n, [(i, j, 1, 0) for i, j in _arcs(rng, n, m, allow_parallel)])


def random_mincost(rng: random.Random, n: int, m: int | None = None, max_cap: int = 5,
                   max_cost: int = 9) -> Network:
    """Feasible min-cost instance: balances come from a random feasible flow."""
    if m is None:
        m = rng.randint(n - 1, min(n * (n - 1), 2 * n + 2))
    arcs = []
    flow_out = [0] * (n + 1)
    for i, j in _arcs(rng, n, m):
        cap = rng.randint(1, max_cap)
        flow = rng.randint(0, cap)
        flow_out[i] += flow
        flow_out[j] -= flow
        arcs.append((i, j, cap, rng.randint(0, max_cost)))
    return make_network(n, arcs, flow_out[1:])


def random_maxflow(rng: random.Random, n: int, m: int | None = None, max_cap: int = 9) -> Network:
    if m is None:
        m = rng.randint(n, min(n * (n - 1), 3 * n))
    arcs = [(i, j, rng.randint(1, max_cap)) for i, j in _arcs(rng, n, m)]
    return make_network(n, arcs, kind=MaxFlow(1, n))


def random_matrix(rng: random.Random, k: int, high: int = 9) -> list[list[int]]:
    return [[rng.randint(0, high) for _ in range(k)] for _ in range(k)]


def random_assignment(rng: random.Random, k: int, high: int = 9) -> Network:
    return assignment_to_network(random_matrix(rng, k, high))
