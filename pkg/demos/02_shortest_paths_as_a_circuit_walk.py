"""
Successive shortest paths as a circuit walk
===========================================

Four supplies, four demands and a capacity-2 middle layer. The algorithm
sends one unit at a time; Dantzig's rule on a penalty objective takes the
same steps.
"""

from circuitflow import fixtures
from circuitflow.algorithms import run_sspa
from circuitflow.circuits import path_nodes
from circuitflow.geometry import face_for, is_vertex
from circuitflow.network import build_residual
from circuitflow.paths import simple_cycles
from circuitflow.verify import classify_walk, verify_replication

net = fixtures.load("fig4.min")
res = run_sspa(net)

for (k, l), step in zip(res.pairs, res.trace.steps):
    route = "-".join(map(str, path_nodes(net, step.circuit)))
    print(f"{k:>2} -> {l:<2}  path {route:12s} alpha {step.alpha}  objective {step.objective_after}")
print("total cost", res.cost)

# the last point sits inside an edge of the polyhedron, not at a vertex
print("terminal point is a vertex:", is_vertex(net, res.trace.final))
print("walk class:", classify_walk(net, res.trace, face_for(net, "sspa")).kind)

# why: two zero-cost residual cycles run around the middle layer in opposite senses
residual = build_residual(net, res.trace.final)
for cycle in simple_cycles(net.n, residual.arcs):
    if sum(r.cost for r in cycle) == 0:
        print("zero-cost cycle", [r.tail for r in cycle] + [cycle[-1].head])

report = verify_replication(net, "sspa")
print("Dantzig's rule replicates the run:", report.equal)

# potentials only change the search, not the path
print("same trace without potentials:", run_sspa(net, potentials=False).trace == res.trace)
