"""
The Hungarian method walks along edges
======================================

Every step of the method is a unit path circuit, and every step is an edge
of the assignment face. Replication by Dantzig's rule holds up to ties:
with several equally cheap alternating paths, the two walks can pick
different ones.
"""

import random

from circuitflow import fixtures
from circuitflow.algorithms import run_hungarian
from circuitflow.geometry import face_for
from circuitflow.network import cost_matrix
from circuitflow.pivot import build_hm_order_objective
from circuitflow.verify import (classify_walk, dantzig_consistent, edge_universality,
                                verify_replication)

matrix = cost_matrix(fixtures.load("fixture3x3.csv"))
res = run_hungarian(matrix)
print("assignment", [c + 1 for c in res.assignment], "cost", res.cost)
print("matching order", res.order)
face = face_for(res.network, "hm")
print("walk class:", classify_walk(res.network, res.trace, face).kind)
print("replicated:", verify_replication(res.network, "hm").equal)

# every maximal step from every reachable vertex of the face is an edge
report = edge_universality(res.network, face)
print(f"{report.vertices} vertices, {report.steps} steps, all edges: {report.holds}")

# random matrices: count strict divergences and check each one is a tie
rng = random.Random(0)
strict = tie_aware = 0
for _ in range(100):
    k = rng.randint(2, 6)
    m = [[rng.randint(0, 9) for _ in range(k)] for _ in range(k)]
    r = run_hungarian(m)
    strict += verify_replication(r.network, "hm").equal
    obj = build_hm_order_objective(r.network, r.order)
    tie_aware += not dantzig_consistent(r.network, r.trace, obj, face_for(r.network, "hm"))
print(f"strict replication {strict}/100, every step a Dantzig maximizer {tie_aware}/100")
