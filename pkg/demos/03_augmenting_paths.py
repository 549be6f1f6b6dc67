"""
Augmenting paths: edge walks and general walks
==============================================

"""

from circuitflow import fixtures
from circuitflow.algorithms import run_gapa
from circuitflow.circuits import path_nodes
from circuitflow.geometry import face_for, is_vertex
from circuitflow.verify import classify_walk, verify_replication

# shortest augmenting paths on a 6-node network
net = fixtures.load("fig9.max")
res = run_gapa(net, "bfs")
for step in res.trace.steps:
    print("-".join(map(str, path_nodes(net, step.circuit))), "alpha", step.alpha)
print("max flow", res.value)
print("walk class:", classify_walk(net, res.trace, face_for(net, "gapa")).kind)
print("steepest ascent replicates it:", verify_replication(net, "sapa").equal)

# the depth-first variant finds other paths but still replicates under first-improving
dfs = run_gapa(net, "dfs")
print("dfs paths:", [len(path_nodes(net, g)) - 1 for g in dfs.trace.circuits], "value", dfs.value)
print("first-improving replicates dfs:", verify_replication(net, "gapa", path_rule="dfs").equal)

# a larger network where breadth-first paths leave the vertex set
big = fixtures.load("fig6.max")
walk = run_gapa(big, "bfs").trace
targets = [big.label(path_nodes(big, g)[1]) for g in walk.circuits]
print("first hops:", targets)
print("terminal point is a vertex:", is_vertex(big, walk.final))
print("walk class:", classify_walk(big, walk, face_for(big, "gapa")).kind)
