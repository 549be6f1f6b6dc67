import random
from fractions import Fraction

import pytest

from circuitflow import fixtures
from circuitflow.algorithms import run_hungarian
from circuitflow.circuits import (PathVariant, enumerate_circuits, path_circuit, path_nodes,
                                  trivial_circuit)
from circuitflow.generators import random_matrix, random_maxflow, random_mincost
from circuitflow.geometry import InfeasiblePointError, face_for, zero_pseudoflow_vertex
from circuitflow.network import NetworkError, assignment_to_network, make_network
from circuitflow.pivot import (MAXIMIZE, MINIMIZE, OPTIMAL, STALLED, UNBOUNDED, Objective,
                               PivotRule, augment, build_hm_order_objective,
                               build_maxflow_objective, build_sspa_objective,
                               candidate_circuits, select_circuit)


def test_sspa_objective_penalty():
    net = fixtures.load("fig4.min")
    obj = build_sspa_objective(net)
    big = 1 + sum(a.cost for a in net.arcs)
    assert obj.sense == MINIMIZE and set(obj.cs_plus) == {big} == set(obj.cs_minus)
    assert obj.value(zero_pseudoflow_vertex(net)) == 8 * big


def test_maxflow_objective_rewards_terminal_slacks():
    net = fixtures.load("fig9.max")
    obj = build_maxflow_objective(net)
    assert obj.sense == MAXIMIZE
    assert obj.cs_plus[net.kind.source - 1] == 1 and obj.cs_minus[net.kind.sink - 1] == 1
    assert obj.cs_plus[1] < 0
    with pytest.raises(NetworkError):
        build_sspa_objective(net)


def test_order_objective_ranks_pairs():
    net = assignment_to_network([[1, 2], [3, 4]])
    obj = build_hm_order_objective(net, [(2, 3), (1, 4)])
    assert obj.cs_minus[1] > obj.cs_minus[0]  # closing the first pair saves the most
    with pytest.raises(ValueError):
        build_hm_order_objective(net, [(1, 3), (1, 4)])


def test_objective_json_round_trip():
    net = fixtures.load("fig9.max")
    obj = build_maxflow_objective(net)
    assert Objective.from_json(obj.to_json(), net) == obj
    with pytest.raises(ValueError):
        Objective.from_json({"x": {"99": "1"}}, net)


def test_dantzig_first_choice_on_fig4():
    net = fixtures.load("fig4.min")
    obj = build_sspa_objective(net)
    z = zero_pseudoflow_vertex(net)
    cands = candidate_circuits(net, z, face_for(net, "sspa"), objective=obj)
    g = select_circuit(cands, z, obj, PivotRule.DANTZIG)
    assert path_nodes(net, g) == [1, 5, 7, 9]
    big = 1 + sum(a.cost for a in net.arcs)
    assert obj.improvement(g) == 2 * big - 3


def test_steepest_first_choice_on_fig9():
    net = fixtures.load("fig9.max")
    obj = build_maxflow_objective(net)
    z = zero_pseudoflow_vertex(net)
    cands = candidate_circuits(net, z, face_for(net, "gapa"), objective=obj)
    g = select_circuit(cands, z, obj, PivotRule.STEEPEST_ASCENT)
    assert path_nodes(net, g) == [1, 4, 5, 6]
    assert obj.improvement(g) / g.bg_norm() == Fraction(1, 4)


def test_first_improving_keeps_candidate_order():
    net = make_network(2, [(1, 2, 1, 0), (1, 2, 1, 0)], [1, -1])
    obj = build_sspa_objective(net)
    z = zero_pseudoflow_vertex(net)
    g1 = path_circuit(net, [(2, 1)], PathVariant.MINUS_PLUS)
    g2 = path_circuit(net, [(1, 1)], PathVariant.MINUS_PLUS)
    assert select_circuit([g1, g2], z, obj, "first") == g1
    assert select_circuit([g1, g2], z, obj, "dantzig") == g2  # tie: smaller key
    assert select_circuit([-g1], z, obj, "dantzig") is None


def test_augment_statuses():
    net = fixtures.load("fig4.min")
    obj = build_sspa_objective(net)
    z = zero_pseudoflow_vertex(net)
    face = face_for(net, "sspa")
    full = augment(net, face, obj, "dantzig", z)
    assert full.status == OPTIMAL and len(full.steps) == 4
    assert full.steps[-1].objective_after == 24
    short = augment(net, face, obj, "dantzig", z, step_limit=2)
    assert short.status == STALLED and len(short.steps) == 2
    assert short.steps == full.steps[:2]
    # negative slack costs and no face: raising both slacks of a node never stops
    bad = Objective(obj.cx, (Fraction(-1),) * net.n, (Fraction(-1),) * net.n, MINIMIZE)
    trace = augment(net, None, bad, "dantzig", z,
                    candidates=lambda p: [trivial_circuit(net, 5)])
    assert trace.status == UNBOUNDED


def test_augment_rejects_bad_starts():
    net = fixtures.load("fig4.min")
    obj = build_sspa_objective(net)
    z = zero_pseudoflow_vertex(net)
    mid = z.step(trivial_circuit(net, 5), 1)
    with pytest.raises(InfeasiblePointError):
        augment(net, None, obj, "dantzig", mid)
    with pytest.raises(InfeasiblePointError):
        augment(net, face_for(net, "sspa"), obj, "dantzig", mid)
    with pytest.raises(ValueError):
        augment(net, None, build_sspa_objective(fixtures.load("fig2.min")), "dantzig", z)


def _small_cases(rng):
    cases = []
    while len(cases) < 40:
        n = rng.randint(2, 4)
        m = rng.randint(n - 1, 18 - 2 * n)
        net = random_mincost(rng, n, m, max_cap=3)
        cases.append((net, face_for(net, "sspa"), build_sspa_objective(net), "dantzig"))
        net = random_maxflow(rng, n, m, max_cap=4)
        cases.append((net, face_for(net, "gapa"), build_maxflow_objective(net), "steepest"))
    for _ in range(10):
        matrix = random_matrix(rng, 2, 3)
        res = run_hungarian(matrix)
        obj = build_hm_order_objective(res.network, res.order)
        cases.append((res.network, face_for(res.network, "hm"), obj, "dantzig"))
    return cases


def test_structured_and_exhaustive_agree():
    for net, face, obj, rule in _small_cases(random.Random(5)):
        assert net.dimension <= 18
        z = zero_pseudoflow_vertex(net)
        a = augment(net, face, obj, rule, z, mode="structured")
        b = augment(net, face, obj, rule, z, mode="exhaustive")
        assert a == b


def test_exhaustive_candidates_are_feasible_circuits():
    net = fixtures.load("fig2.min")
    z = zero_pseudoflow_vertex(net)
    cands = candidate_circuits(net, z, None, mode="exhaustive")
    assert 0 < len(cands) < len(enumerate_circuits(net))
    with pytest.raises(ValueError):
        candidate_circuits(net, z, None, mode="sideways")
