import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circuitflow import fixtures
from circuitflow.circuits import (GUARD_ENV, Circuit, CircuitError, CycleKind, PathKind,
                                  PathVariant, SizeGuardError, TrivialKind, cycle_circuit,
                                  enumerate_circuits, feasible_circuits, in_kernel, max_step,
                                  oracle_circuits, path_circuit, path_nodes, trivial_circuit)
from circuitflow.generators import random_network
from circuitflow.geometry import S_MINUS, S_PLUS, X, FaceSpec, zero_pseudoflow_vertex
from circuitflow.network import MaxFlow, make_network


@pytest.fixture
def line():
    # 1 -> 2 -> 3 with a chord 1 -> 3
    return make_network(3, [(1, 2, 2, 1), (2, 3, 2, 1), (1, 3, 1, 5)], [1, 0, -1])


def test_path_circuit_variants(line):
    g = path_circuit(line, [(1, 1), (2, 1)], PathVariant.MINUS_PLUS)
    assert g.gx == {1: 1, 2: 1}
    assert g.gs_minus == {1: -1} and g.gs_plus == {3: -1}
    assert in_kernel(line, g)
    assert g.kind == PathKind(1, 3, PathVariant.MINUS_PLUS, 1)
    for variant in PathVariant:
        h = path_circuit(line, [(1, 1), (2, 1)], variant)
        assert in_kernel(line, h)
        assert h.kind.variant == variant


def test_reverse_path_has_negative_sign(line):
    g = path_circuit(line, [(2, -1), (1, -1)], PathVariant.PLUS_MINUS)
    kind = g.kind
    assert (kind.from_, kind.to, kind.sign) == (1, 3, -1)
    assert kind.variant == PathVariant.MINUS_PLUS  # classes read from the min node
    assert path_nodes(line, g) == [3, 2, 1]
    assert -g == path_circuit(line, [(1, 1), (2, 1)], PathVariant.MINUS_PLUS)


def test_cycle_and_trivial(line):
    c = cycle_circuit(line, [(1, 1), (2, 1), (3, -1)])
    assert in_kernel(line, c) and c.kind == CycleKind(1)
    assert (-c).kind == CycleKind(-1)
    t = trivial_circuit(line, 2)
    assert in_kernel(line, t) and t.kind == TrivialKind(2, 1)


@pytest.mark.parametrize("build", [
    lambda n: path_circuit(n, [(1, 1), (1, -1)], "s+s-"),
    lambda n: path_circuit(n, [(1, 1), (3, 1)], "s+s-"),
    lambda n: path_circuit(n, [(9, 1)], "s+s-"),
    lambda n: path_circuit(n, [(1, 2)], "s+s-"),
    lambda n: path_circuit(n, [(1, 1)], "s+s-", sign=2),
    lambda n: path_circuit(n, [], "s+s-"),
    lambda n: cycle_circuit(n, [(1, 1), (2, 1)]),
    lambda n: trivial_circuit(n, 4),
])
def test_constructor_errors(line, build):
    with pytest.raises(CircuitError):
        build(line)


def test_key_orders_by_support_then_entries():
    a = Circuit(((S_PLUS, 1, 1), (S_MINUS, 1, 1)))
    b = Circuit(((X, 1, 1), (S_PLUS, 1, 1), (S_MINUS, 2, 1)))
    c = Circuit(((X, 1, -1), (S_PLUS, 1, -1), (S_MINUS, 2, -1)))
    assert sorted([b, a, c], key=lambda g: g.key) == [a, c, b]


def test_fig2_counts_and_ordering():
    net = fixtures.load("fig2.min")
    circuits = enumerate_circuits(net)
    kinds = [g.kind for g in circuits]
    assert sum(isinstance(k, PathKind) for k in kinds) == 152
    assert sum(isinstance(k, CycleKind) for k in kinds) == 6
    assert sum(isinstance(k, TrivialKind) for k in kinds) == 8
    assert circuits == sorted(circuits, key=lambda g: g.key)
    assert set(circuits) == {-g for g in circuits}


def test_fig2_circuits_are_support_minimal_kernel_vectors():
    net = fixtures.load("fig2.min")
    circuits = enumerate_circuits(net)
    supports = [frozenset((c, i) for c, i, _ in g.entries) for g in circuits]
    for g in circuits:
        assert in_kernel(net, g)
        assert all(abs(s) == 1 for _, _, s in g.entries)
    for s1, s2 in itertools.product(set(supports), repeat=2):
        assert not s1 < s2


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6), st.booleans())
def test_enumeration_matches_oracle(seed, n, parallel):
    rng = random.Random(seed)
    m_max = 18 - 2 * n
    if m_max < 1 or n < 2:
        return
    net = random_network(rng, n, rng.randint(0, m_max), allow_parallel=parallel)
    assert set(enumerate_circuits(net)) == set(oracle_circuits(net))


def test_size_guard(monkeypatch):
    net = fixtures.load("fig6.max")
    with pytest.raises(SizeGuardError):
        enumerate_circuits(net)
    small = fixtures.load("fig2.min")
    with pytest.raises(SizeGuardError):
        enumerate_circuits(small, guard=small.dimension - 1)
    monkeypatch.setenv(GUARD_ENV, "3")
    with pytest.raises(SizeGuardError):
        enumerate_circuits(small)
    with pytest.raises(SizeGuardError):
        oracle_circuits(small)


def test_max_step(line):
    z = zero_pseudoflow_vertex(line)
    g = path_circuit(line, [(1, 1), (2, 1)], PathVariant.MINUS_PLUS)
    assert max_step(line, z, g) == 1  # s-_1 = 1 runs out first
    up = path_circuit(line, [(1, 1), (2, 1)], PathVariant.PLUS_MINUS)
    assert max_step(line, z, up) == 2  # capacity 2
    assert max_step(line, z, trivial_circuit(line, 2)) is None
    assert max_step(line, z, -trivial_circuit(line, 2)) == 0
    face = FaceSpec(frozenset({(S_PLUS, 1)}))
    assert max_step(line, z, up, face) == 0
    half = z.step(up, Fraction(1, 2))
    assert max_step(line, half, -up) == Fraction(1, 2)


def test_feasible_circuits_at_zero_vertex():
    net = make_network(2, [(1, 2, 1, 0)], kind=MaxFlow(1, 2))
    z = zero_pseudoflow_vertex(net)
    feas = feasible_circuits(net, z, enumerate_circuits(net))
    # only directions that raise x or raise both slacks of a node are feasible at 0
    for g in feas:
        assert all(s > 0 for c, _, s in g.entries if c == X)
        assert not any(s < 0 for c, _, s in g.entries if c in (S_PLUS, S_MINUS))
    assert trivial_circuit(net, 1) in feas
