import random
from dataclasses import replace
from fractions import Fraction

import pytest

from circuitflow import fixtures
from circuitflow.algorithms import run_gapa, run_hungarian, run_sspa
from circuitflow.circuits import trivial_circuit
from circuitflow.generators import random_maxflow, random_mincost
from circuitflow.geometry import face_for, zero_pseudoflow_vertex
from circuitflow.network import NetworkError
from circuitflow.pivot import WalkTrace, build_sspa_objective
from circuitflow.verify import (EDGE_STEP, EDGE_WALK, GENERAL_WALK, NON_VERTEX_STEP,
                                InvalidTraceError, classify_walk, dantzig_consistent,
                                edge_universality, run_algorithm, validate_trace,
                                verify_replication)


def test_classify_labels_on_fig4():
    net = fixtures.load("fig4.min")
    result = classify_walk(net, run_sspa(net).trace)
    assert result.kind == GENERAL_WALK
    assert result.labels[0] == EDGE_STEP
    assert result.labels[-1] == NON_VERTEX_STEP


def test_classify_empty_walk_is_edge_walk():
    net = fixtures.load("fig4.min")
    assert classify_walk(net, WalkTrace(zero_pseudoflow_vertex(net))).kind == EDGE_WALK


def test_validate_rejects_short_steps():
    net = fixtures.load("fig9.max")
    trace = run_gapa(net).trace
    first = trace.steps[0]
    half = first.alpha / 2
    short = replace(first, alpha=half, point_after=trace.start.step(first.circuit, half))
    with pytest.raises(InvalidTraceError, match="maximal step"):
        validate_trace(net, WalkTrace(trace.start, (short,)))


def test_validate_rejects_wrong_points_and_starts():
    net = fixtures.load("fig9.max")
    trace = run_gapa(net).trace
    bad = replace(trace.steps[0], point_after=trace.start)
    with pytest.raises(InvalidTraceError, match="recorded point"):
        validate_trace(net, WalkTrace(trace.start, (bad,)))
    off = trace.start.step(trivial_circuit(net, 2), 1)
    with pytest.raises(InvalidTraceError, match="vertex"):
        validate_trace(net, WalkTrace(off))
    with pytest.raises(InvalidTraceError, match="infeasible"):
        validate_trace(net, WalkTrace(off), face_for(net, "gapa"))


def test_replication_reports():
    net = fixtures.load("fig4.min")
    for mode in ("point-sequence", "circuit-sequence"):
        report = verify_replication(net, "sspa", mode)
        assert report.equal and report.divergence is None and report.steps == 4
        assert report.walk_class_a == report.walk_class_b == GENERAL_WALK
    net = fixtures.load("fig9.max")
    for algo in ("gapa", "sapa"):
        assert verify_replication(net, algo).equal
    assert verify_replication(net, "gapa", path_rule="dfs").equal
    exhaustive = verify_replication(net, "sapa", structured=False)
    assert exhaustive.equal and exhaustive.walk_class_a == EDGE_WALK


def test_replication_rejects_mismatched_kinds():
    with pytest.raises(NetworkError):
        verify_replication(fixtures.load("fig9.max"), "sspa")
    with pytest.raises(NetworkError):
        verify_replication(fixtures.load("fig4.min"), "hm")
    with pytest.raises(ValueError):
        verify_replication(fixtures.load("fig4.min"), "simplex")
    with pytest.raises(ValueError):
        verify_replication(fixtures.load("fig4.min"), "sspa", "by-vibes")


def test_hm_divergence_is_a_tie():
    # two equally cheap alternating paths; the first reported divergence must be one of them
    rng = random.Random(1)
    found = 0
    for _ in range(80):
        k = rng.randint(3, 6)
        matrix = [[rng.randint(0, 3) for _ in range(k)] for _ in range(k)]
        res = run_hungarian(matrix)
        report = verify_replication(res.network, "hm")
        if report.equal:
            continue
        found += 1
        div = report.divergence
        a, b = report.trace_a, report.trace_b
        assert a.points[div.step] == b.points[div.step]
        obj = build_order(res)
        assert obj.improvement(div.circuit_a) == obj.improvement(div.circuit_b)
        assert div.circuit_b.key < div.circuit_a.key
    assert found > 0


def build_order(res):
    from circuitflow.pivot import build_hm_order_objective
    return build_hm_order_objective(res.network, res.order)


def test_dantzig_consistency_flags_non_maximizers():
    net = fixtures.load("fig4.min")
    obj = build_sspa_objective(net)
    face = face_for(net, "sspa")
    trace = run_sspa(net).trace
    assert dantzig_consistent(net, trace, obj, face) == []
    swapped = WalkTrace(trace.start, (trace.steps[1],))
    assert dantzig_consistent(net, swapped, obj, face) == [0]


def test_edge_universality_on_tiny_instances():
    net = fixtures.load("fixture3x3.csv")
    report = edge_universality(net, face_for(net, "hm"))
    assert report.holds and report.vertices > 1 and report.steps > report.vertices
    # on the full polyhedron some maximal circuit steps cut through a 2-face
    rng = random.Random(2)
    small = random_maxflow(rng, 3, 3, max_cap=2)
    report = edge_universality(small, None)
    assert not report.holds
    reasons = {reason for _, _, reason in report.failures}
    assert "non-edge" in reasons
    assert "unbounded" in reasons  # raising both slacks of a node never hits a bound


def test_run_algorithm_dispatch():
    rng = random.Random(3)
    net = random_mincost(rng, 4)
    assert run_algorithm(net, "sspa") == run_sspa(net).trace
    with pytest.raises(ValueError):
        run_algorithm(net, "nope")


def test_points_are_exact_rationals():
    net = fixtures.load("fig9.max")
    for p in run_gapa(net).trace.points:
        assert all(isinstance(v, Fraction) for v in p.coords())
