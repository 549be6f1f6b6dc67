"""
Preflow-push on a face of the polyhedron
========================================

"""

from circuitflow import fixtures
from circuitflow.algorithms import run_preflow_push
from circuitflow.geometry import face_for, is_vertex
from circuitflow.verify import classify_walk, validate_trace

net = fixtures.load("fig7.max")
res = run_preflow_push(net, [3, 2, 1, 4])  # process active nodes in this priority
face = face_for(net, "pfp")
validate_trace(net, res.trace, face)

for k, p in enumerate(res.trace.points):
    x = " ".join(str(v) for v in p.x)
    excess = " ".join(str(v) for v in p.s_minus[:4])
    print(f"{k:2d}  x = {x:14s}  excess = {excess:8s}  vertex = {is_vertex(net, p)}")

for e in res.trace.events:
    print(f"relabel node {e['node']}: {e['old']} -> {e['new']} (before step {e['step']})")

print("max flow", res.value)
print("walk class:", classify_walk(net, res.trace, face).kind)
