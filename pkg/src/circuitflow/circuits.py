"""Circuits of the pseudoflow polyhedron.

A circuit is stored as a sorted tuple of ``(class, id, sign)`` entries with
class ordering x < s+ < s-. Path, cycle and trivial circuits are the
simple undirected cycles of the pseudoflow network: the original network plus
a virtual dummy node 0 with arcs s+_i = (0, i) and s-_i = (i, 0).
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .geometry import CLASS_NAMES, S_MINUS, S_PLUS, X, FaceSpec, PseudoflowPoint
from .network import Network

DEFAULT_ENUM_GUARD = 40
DEFAULT_ORACLE_GUARD = 18
GUARD_ENV = "CIRCUITFLOW_SIZE_GUARD"


class CircuitError(ValueError):
    """Raised for arc sequences that do not describe a path or cycle."""


class SizeGuardError(RuntimeError):
    """Raised when an enumeration would exceed the configured size guard."""


class PathVariant(str, enum.Enum):
    """Slack classes at (origin, destination) of a path circuit's flow."""

    PLUS_MINUS = "s+s-"    # (H, e_i, e_j): augmenting s-t paths, preflow saturation
    PLUS_PLUS = "s+s+"     # (H, e_i - e_j, 0)
    MINUS_MINUS = "s-s-"   # (H, 0, -e_i + e_j): preflow pushes
    MINUS_PLUS = "s-s+"    # (H, -e_j, -e_i): shortest path and Hungarian steps

    @property
    def classes(self) -> tuple[int, int]:
        first = S_PLUS if self.value[1] == "+" else S_MINUS
        second = S_PLUS if self.value[3] == "+" else S_MINUS
        return first, second


@dataclass(frozen=True)
class PathKind:
    from_: int
    to: int
    variant: PathVariant
    sign: int
    name = "path"


@dataclass(frozen=True)
class CycleKind:
    sign: int
    name = "cycle"


@dataclass(frozen=True)
class TrivialKind:
    node: int
    sign: int
    name = "trivial"


CircuitKind = Union[PathKind, CycleKind, TrivialKind]


@dataclass(frozen=True)
class Circuit:
    entries: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    @classmethod
    def from_maps(cls, gx=None, gs_plus=None, gs_minus=None) -> "Circuit":
        entries = []
        for klass, mapping in ((X, gx), (S_PLUS, gs_plus), (S_MINUS, gs_minus)):
            for ident, sign in (mapping or {}).items():
                if sign != 0:
                    entries.append((klass, int(ident), int(sign)))
        return cls(tuple(entries))

    def _map(self, klass: int) -> dict[int, int]:
        return {i: s for c, i, s in self.entries if c == klass}

    @property
    def gx(self) -> dict[int, int]:
        return self._map(X)

    @property
    def gs_plus(self) -> dict[int, int]:
        return self._map(S_PLUS)

    @property
    def gs_minus(self) -> dict[int, int]:
        return self._map(S_MINUS)

    @property
    def key(self):
        """Tie-break key: smaller support first, then lexicographic entries."""
        return (len(self.entries), self.entries)

    def __neg__(self) -> "Circuit":
        return Circuit(tuple((c, i, -s) for c, i, s in self.entries))

    def bg_norm(self) -> int:
        """||B g||_1: two bound rows per arc coordinate, one per slack."""
        return sum(2 * abs(s) if c == X else abs(s) for c, _, s in self.entries)

    def dot(self, objective) -> Fraction:
        costs = (objective.cx, objective.cs_plus, objective.cs_minus)
        return sum((costs[c][i - 1] * s for c, i, s in self.entries), Fraction(0))

    @property
    def kind(self) -> CircuitKind:
        return _kind_of(self.entries)

    def describe(self) -> str:
        parts = []
        for c, i, s in self.entries:
            parts.append(f"{'+' if s > 0 else '-'}{CLASS_NAMES[c]}[{i}]")
        return " ".join(parts)


@lru_cache(maxsize=65536)
def _kind_of(entries) -> CircuitKind:
    xs = [e for e in entries if e[0] == X]
    slacks = [e for e in entries if e[0] != X]
    if any(abs(s) != 1 for _, _, s in entries):
        raise CircuitError("circuit entries must be +-1")
    if not xs:
        if len(slacks) == 2 and slacks[0][1] == slacks[1][1] and slacks[0][2] == slacks[1][2]:
            return TrivialKind(slacks[0][1], slacks[0][2])
        raise CircuitError("not a trivial circuit")
    if not slacks:
        return CycleKind(xs[0][2])
    if len(slacks) != 2 or slacks[0][1] == slacks[1][1]:
        raise CircuitError("path circuits carry slack entries at two distinct nodes")
    by_node = {i: (c, s) for c, i, s in slacks}
    lo, hi = sorted(by_node)
    c_lo, s_lo = by_node[lo]
    # net outflow of the x part at a node equals (s+ entry) - (s- entry)
    out_lo = s_lo if c_lo == S_PLUS else -s_lo
    sign = 1 if out_lo > 0 else -1
    variant = _variant_from_classes(c_lo, by_node[hi][0])
    return PathKind(lo, hi, variant, sign)


def _variant_from_classes(first: int, second: int) -> PathVariant:
    for v in PathVariant:
        if v.classes == (first, second):
            return v
    raise AssertionError("unreachable")


def in_kernel(net: Network, g: Circuit) -> bool:
    """Check (A g_x - g_s+ + g_s-)_i = 0 for every node."""
    total = [0] * (net.n + 1)
    for c, i, s in g.entries:
        if c == X:
            a = net.arc(i)
            total[a.tail] += s
            total[a.head] -= s
        elif c == S_PLUS:
            total[i] -= s
        else:
            total[i] += s
    return not any(total[1:])


# --- construction ---------------------------------------------------------

def _walk(net: Network, arc_seq: Sequence[tuple[int, int]]) -> list[int]:
    """Node sequence visited by an oriented arc sequence; checks connectivity."""
    if not arc_seq:
        raise CircuitError("empty arc sequence")
    nodes = []
    for pos, (arc_id, direction) in enumerate(arc_seq):
        if direction not in (1, -1):
            raise CircuitError("direction must be +1 (forward) or -1 (backward)")
        try:
            a = net.arc(arc_id)
        except KeyError:
            raise CircuitError(f"unknown arc {arc_id}") from None
        start, end = (a.tail, a.head) if direction == 1 else (a.head, a.tail)
        if pos == 0:
            nodes.append(start)
        elif nodes[-1] != start:
            raise CircuitError(f"arc {arc_id} does not continue the sequence at node {nodes[-1]}")
        nodes.append(end)
    if len({a for a, _ in arc_seq}) != len(arc_seq):
        raise CircuitError("arc sequence repeats an arc")
    return nodes


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise CircuitError("sign must be +1 or -1")
    return sign


def path_circuit(net: Network, arc_path: Sequence[tuple[int, int]],
                 variant: PathVariant | str, sign: int = 1) -> Circuit:
    """Path circuit sending one unit from the first to the last node of ``arc_path``.

    ``variant`` names the slack classes at (origin, destination) for sign +1.
    """
    variant = PathVariant(variant)
    _check_sign(sign)
    nodes = _walk(net, arc_path)
    if len(set(nodes)) != len(nodes):
        raise CircuitError("path is not simple")
    origin, dest = nodes[0], nodes[-1]
    first, second = variant.classes
    entries = [(X, a, d * sign) for a, d in arc_path]
    entries.append((first, origin, (1 if first == S_PLUS else -1) * sign))
    entries.append((second, dest, (-1 if second == S_PLUS else 1) * sign))
    return Circuit(tuple(entries))


def cycle_circuit(net: Network, arc_cycle: Sequence[tuple[int, int]], sign: int = 1) -> Circuit:
    _check_sign(sign)
    nodes = _walk(net, arc_cycle)
    if nodes[0] != nodes[-1]:
        raise CircuitError("cycle is not closed")
    if len(set(nodes[:-1])) != len(nodes) - 1:
        raise CircuitError("cycle is not simple")
    return Circuit(tuple((X, a, d * sign) for a, d in arc_cycle))


def trivial_circuit(net: Network, node: int, sign: int = 1) -> Circuit:
    _check_sign(sign)
    if not 1 <= node <= net.n:
        raise CircuitError(f"unknown node {node}")
    return Circuit(((S_PLUS, node, sign), (S_MINUS, node, sign)))


def path_nodes(net: Network, g: Circuit) -> list[int]:
    """Nodes of a path circuit in flow order (origin first)."""
    kind = g.kind
    if not isinstance(kind, PathKind):
        raise CircuitError("not a path circuit")
    origin = kind.from_ if kind.sign > 0 else kind.to
    dest = kind.to if kind.sign > 0 else kind.from_
    step = {}
    for arc_id, s in g.gx.items():
        a = net.arc(arc_id)
        u, v = (a.tail, a.head) if s > 0 else (a.head, a.tail)
        step[u] = v
    seq = [origin]
    while seq[-1] != dest:
        seq.append(step[seq[-1]])
    return seq


# --- enumeration ----------------------------------------------------------

def _guard(default: int, override: int | None) -> int:
    if override is not None:
        return override
    env = os.environ.get(GUARD_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise SizeGuardError(f"{GUARD_ENV} must be an integer") from None
    return default


def _pseudoflow_edges(net: Network) -> list[tuple[tuple[int, int], int, int]]:
    """Edges of the pseudoflow network as (coordinate, tail, head); node 0 is the dummy."""
    edges = [((X, a.id), a.tail, a.head) for a in net.arcs]
    edges += [((S_PLUS, i), 0, i) for i in net.nodes]
    edges += [((S_MINUS, i), i, 0) for i in net.nodes]
    return edges


def enumerate_circuits(net: Network, guard: int | None = None) -> list[Circuit]:
    """All circuits, both orientations, in canonical key order.

    Backtracking over simple undirected cycles of the pseudoflow network,
    rooted at the smallest vertex of each cycle.
    """
    limit = _guard(DEFAULT_ENUM_GUARD, guard)
    if net.dimension > limit:
        raise SizeGuardError(f"m + 2n = {net.dimension} exceeds the enumeration guard {limit}")
    return list(_enumerate_cached(net))


@lru_cache(maxsize=64)
def _enumerate_cached(net: Network) -> tuple[Circuit, ...]:
    edges = _pseudoflow_edges(net)
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(net.n + 1)}
    for e, (_, tail, head) in enumerate(edges):
        adj[tail].append((e, head))
        adj[head].append((e, tail))

    seen: set[frozenset] = set()
    found: list[Circuit] = []

    def record(root: int, path: list[int]):
        ids = frozenset(path)
        if ids in seen:
            return
        seen.add(ids)
        entries = []
        at = root
        for e in path:
            coord, tail, head = edges[e]
            if at == tail:
                entries.append((coord[0], coord[1], 1))
                at = head
            else:
                entries.append((coord[0], coord[1], -1))
                at = tail
        g = Circuit(tuple(entries))
        found.extend((g, -g))

    def extend(root: int, at: int, path: list[int], on_path: set[int]):
        for e, w in adj[at]:
            if e in path:
                continue
            if w == root:
                record(root, path + [e])
            elif w > root and w not in on_path:
                path.append(e)
                on_path.add(w)
                extend(root, w, path, on_path)
                path.pop()
                on_path.discard(w)

    for root in range(net.n + 1):
        extend(root, root, [], {root})
    return tuple(sorted(found, key=lambda g: g.key))


def oracle_circuits(net: Network, guard: int | None = None) -> list[Circuit]:
    """Circuits straight from the definition, for testing only.

    Every row of B (0 <= x <= u, s >= 0) is a signed unit row, so supp(Bg)
    grows with supp(g) and support-minimality of Bg is support-minimality of
    g in ker[A -I I]. The search walks independent column sets S in index
    order; when a later column c depends on S, the unique kernel vector on
    S + {c} is a circuit iff its support is all of S + {c}. Each circuit is
    met exactly once, at S = support minus its largest column. Kernel vectors
    are scaled to coprime integers; no +-1 assumption is made.
    """
    limit = _guard(DEFAULT_ORACLE_GUARD, guard)
    if net.dimension > limit:
        raise SizeGuardError(f"m + 2n = {net.dimension} exceeds the oracle guard {limit}")
    coords = [(X, a.id) for a in net.arcs] + [(S_PLUS, i) for i in net.nodes] \
        + [(S_MINUS, i) for i in net.nodes]
    columns = []
    for c, i in coords:
        col = [Fraction(0)] * net.n
        if c == X:
            a = net.arc(i)
            col[a.tail - 1] += 1
            col[a.head - 1] -= 1
        else:
            col[i - 1] = Fraction(-1 if c == S_PLUS else 1)
        columns.append(col)
    dim = len(columns)
    found: list[Circuit] = []

    def reduce_column(c: int, basis):
        vec = list(columns[c])
        combo = {c: Fraction(1)}
        for pivot, bvec, bcombo in basis:
            if vec[pivot] != 0:
                f = vec[pivot] / bvec[pivot]
                vec = [v - f * b for v, b in zip(vec, bvec)]
                for k, w in bcombo.items():
                    combo[k] = combo.get(k, Fraction(0)) - f * w
        return vec, combo

    def search(start: int, basis, members: list[int]):
        for c in range(start, dim):
            vec, combo = reduce_column(c, basis)
            pivot = next((r for r, v in enumerate(vec) if v != 0), None)
            if pivot is None:
                support = {k for k, w in combo.items() if w != 0}
                if support == set(members) | {c}:
                    found.extend(_normalized(coords, combo))
            else:
                search(c + 1, basis + [(pivot, vec, combo)], members + [c])

    search(0, [], [])
    return sorted(found, key=lambda g: g.key)


def _normalized(coords, combo) -> list[Circuit]:
    vals = {k: w for k, w in combo.items() if w != 0}
    scale = lcm(*(w.denominator for w in vals.values()))
    ints = {k: int(w * scale) for k, w in vals.items()}
    div = reduce(gcd, (abs(v) for v in ints.values()))
    g = Circuit(tuple((coords[k][0], coords[k][1], v // div) for k, v in ints.items()))
    return [g, -g]


# --- stepping -------------------------------------------------------------

def max_step(net: Network, point: PseudoflowPoint, g: Circuit,
             face: FaceSpec | None = None) -> Fraction | None:
    """Largest alpha keeping point + alpha*g feasible (and in ``face``).

    Returns None when no bound ever becomes tight (unbounded direction).
    """
    best: Fraction | None = None
    for c, i, s in g.entries:
        if c == X:
            a = net.arc(i)
            room = (a.capacity - point.x[i - 1]) / abs(s) if s > 0 else point.x[i - 1] / abs(s)
        else:
            if face is not None and face.is_pinned(c, i):
                return Fraction(0)
            if s > 0:
                continue
            room = point.value(c, i) / abs(s)
        if best is None or room < best:
            best = room
    return best


def is_feasible_direction(net: Network, point: PseudoflowPoint, g: Circuit,
                          face: FaceSpec | None = None) -> bool:
    alpha = max_step(net, point, g, face)
    return alpha is None or alpha > 0


def feasible_circuits(net: Network, point: PseudoflowPoint, circuits: Iterable[Circuit],
                      face: FaceSpec | None = None) -> list[Circuit]:
    return [g for g in circuits if is_feasible_direction(net, point, g, face)]
