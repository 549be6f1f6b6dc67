"""
Circuits of a small pseudoflow polyhedron
==========================================

"""

from collections import Counter

from circuitflow import fixtures
from circuitflow.circuits import enumerate_circuits, max_step, oracle_circuits
from circuitflow.geometry import zero_pseudoflow_vertex, is_vertex

net = fixtures.load("fig2.min")
print(f"{net.n} nodes, {net.m} arcs, polyhedron dimension m + 2n = {net.dimension}")

# every circuit, both orientations, sorted by (support size, entries)
circuits = enumerate_circuits(net)
print(Counter(g.kind.name for g in circuits))

# the brute-force kernel search agrees
assert set(circuits) == set(oracle_circuits(net))

# a few of each kind
for name in ("trivial", "cycle", "path"):
    g = next(g for g in circuits if g.kind.name == name)
    print(f"{name:8s} {g.describe()}")

# from the zero-flow vertex only some directions are feasible
z = zero_pseudoflow_vertex(net)
print("start is a vertex:", is_vertex(net, z))
steps = Counter()
for g in circuits:
    alpha = max_step(net, z, g)
    steps["blocked" if alpha == 0 else "unbounded" if alpha is None else "moves"] += 1
print(steps)
