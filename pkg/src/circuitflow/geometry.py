"""Points, faces and exact vertex/edge tests for the pseudoflow polyhedron.

The polyhedron lives in R^(m+2n) with coordinates ordered x (arcs), s+ and
s- (nodes)::

    A x - s+ + s- = b,   0 <= x <= u,   s+, s- >= 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from . import linalg
from .network import Assignment, MaxFlow, Network, NetworkError, to_fraction

# coordinate classes; also the sort order of circuit entries
X, S_PLUS, S_MINUS = 0, 1, 2
CLASS_NAMES = {X: "x", S_PLUS: "s_plus", S_MINUS: "s_minus"}


class InfeasiblePointError(ValueError):
    """Raised when an operation needs a feasible point and gets something else."""


@dataclass(frozen=True)
class PseudoflowPoint:
    x: tuple[Fraction, ...]
    s_plus: tuple[Fraction, ...]
    s_minus: tuple[Fraction, ...]

    @classmethod
    def of(cls, x: Iterable, s_plus: Iterable, s_minus: Iterable) -> "PseudoflowPoint":
        return cls(tuple(map(to_fraction, x)), tuple(map(to_fraction, s_plus)),
                   tuple(map(to_fraction, s_minus)))

    def value(self, cls_: int, ident: int) -> Fraction:
        return (self.x, self.s_plus, self.s_minus)[cls_][ident - 1]

    def coords(self) -> tuple[Fraction, ...]:
        return self.x + self.s_plus + self.s_minus

    def step(self, circuit, alpha) -> "PseudoflowPoint":
        """Return ``self + alpha * circuit``."""
        alpha = to_fraction(alpha)
        parts = [list(self.x), list(self.s_plus), list(self.s_minus)]
        for cls_, ident, sign in circuit.entries:
            parts[cls_][ident - 1] += sign * alpha
        return PseudoflowPoint(tuple(parts[0]), tuple(parts[1]), tuple(parts[2]))

    def midpoint(self, other: "PseudoflowPoint") -> "PseudoflowPoint":
        half = Fraction(1, 2)
        return PseudoflowPoint(*(tuple((a + b) * half for a, b in zip(p, q))
                                 for p, q in ((self.x, other.x), (self.s_plus, other.s_plus),
                                              (self.s_minus, other.s_minus))))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coords())


def zero_pseudoflow_vertex(net: Network) -> PseudoflowPoint:
    """The unique vertex with x = 0: slacks absorb every balance."""
    s_plus = tuple(-b if b <= 0 else Fraction(0) for b in net.balances)
    s_minus = tuple(b if b > 0 else Fraction(0) for b in net.balances)
    return PseudoflowPoint((Fraction(0),) * net.m, s_plus, s_minus)


def point_from_flow(net: Network, x: Sequence) -> PseudoflowPoint:
    """Complete an arc flow with the smallest slacks that restore balance."""
    x = tuple(map(to_fraction, x))
    net_out = [Fraction(0)] * net.n
    for a in net.arcs:
        net_out[a.tail - 1] += x[a.id - 1]
        net_out[a.head - 1] -= x[a.id - 1]
    gap = [b - o for b, o in zip(net.balances, net_out)]  # = s- - s+
    return PseudoflowPoint(x, tuple(max(-g, Fraction(0)) for g in gap),
                           tuple(max(g, Fraction(0)) for g in gap))


# --- faces ----------------------------------------------------------------

@dataclass(frozen=True)
class FaceSpec:
    """Slack coordinates pinned to zero, as ``(S_PLUS|S_MINUS, node)`` pairs."""

    pinned: frozenset = frozenset()

    def is_pinned(self, cls_: int, node: int) -> bool:
        return (cls_, node) in self.pinned

    def validate(self, net: Network) -> None:
        for cls_, node in self.pinned:
            if cls_ not in (S_PLUS, S_MINUS) or not 1 <= node <= net.n:
                raise NetworkError(f"face pins unknown slack {(cls_, node)}")


FACE_ALGORITHMS = ("sspa", "gapa", "sapa", "hm", "pfp")


def face_for(net: Network, algorithm: str) -> FaceSpec:
    """Face of the polyhedron that an algorithm's walk stays on.

    For the shortest path algorithm, s+ is pinned on every node that is not a
    deficit node (b >= 0) and s- on every node that is not an excess node
    (b <= 0). This follows the starting vertex and the other faces rather
    than the opposite sign that one statement of the face uses; nodes with
    b = 0 get both slacks pinned.
    """
    algorithm = algorithm.lower()
    kind = net.kind
    pinned = set()
    if algorithm == "sspa":
        if isinstance(kind, MaxFlow):
            raise NetworkError("shortest path face needs a min-cost or assignment instance")
        for i in net.nodes:
            b = net.balance(i)
            if b >= 0:
                pinned.add((S_PLUS, i))
            if b <= 0:
                pinned.add((S_MINUS, i))
    elif algorithm in ("gapa", "sapa"):
        if not isinstance(kind, MaxFlow):
            raise NetworkError("augmenting path face needs a max-flow instance")
        pinned = {(S_PLUS, i) for i in net.nodes if i != kind.source}
        pinned |= {(S_MINUS, i) for i in net.nodes if i != kind.sink}
    elif algorithm == "hm":
        if not isinstance(kind, Assignment):
            raise NetworkError("Hungarian face needs an assignment instance")
        pinned = {(S_PLUS, l) for l in kind.left} | {(S_MINUS, t) for t in kind.right}
    elif algorithm == "pfp":
        if not isinstance(kind, MaxFlow):
            raise NetworkError("preflow face needs a max-flow instance")
        pinned = {(S_MINUS, kind.source)} | {(S_PLUS, i) for i in net.nodes if i != kind.source}
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return FaceSpec(frozenset(pinned))


# --- feasibility ----------------------------------------------------------

class Violation(NamedTuple):
    constraint: str
    residual: Fraction


def check_feasible(net: Network, point: PseudoflowPoint, face: FaceSpec | None = None) -> list[Violation]:
    """Every violated constraint with the amount of violation; empty iff feasible."""
    out: list[Violation] = []
    if (len(point.x), len(point.s_plus), len(point.s_minus)) != (net.m, net.n, net.n):
        return [Violation("dimension", Fraction(abs(len(point.coords()) - net.dimension)))]
    for a in net.arcs:
        v = point.x[a.id - 1]
        if v < 0:
            out.append(Violation(f"x[{a.id}] >= 0", -v))
        if v > a.capacity:
            out.append(Violation(f"x[{a.id}] <= u[{a.id}]", v - a.capacity))
    for i in net.nodes:
        if point.s_plus[i - 1] < 0:
            out.append(Violation(f"s_plus[{i}] >= 0", -point.s_plus[i - 1]))
        if point.s_minus[i - 1] < 0:
            out.append(Violation(f"s_minus[{i}] >= 0", -point.s_minus[i - 1]))
    lhs = [-sp + sm for sp, sm in zip(point.s_plus, point.s_minus)]
    for a in net.arcs:
        lhs[a.tail - 1] += point.x[a.id - 1]
        lhs[a.head - 1] -= point.x[a.id - 1]
    for i in net.nodes:
        gap = lhs[i - 1] - net.balance(i)
        if gap != 0:
            out.append(Violation(f"balance[{i}]", gap))
    if face is not None:
        for cls_, node in sorted(face.pinned):
            v = point.value(cls_, node)
            if v != 0:
                out.append(Violation(f"face {CLASS_NAMES[cls_]}[{node}] = 0", abs(v)))
    return out


def _require_feasible(net: Network, point: PseudoflowPoint) -> None:
    report = check_feasible(net, point)
    if report:
        raise InfeasiblePointError("infeasible point: " + ", ".join(v.constraint for v in report))


# --- active sets and rank -------------------------------------------------

@dataclass(frozen=True)
class ActiveSet:
    """Tight inequality constraints of a point plus the n balance rows.

    ``tight`` holds ``(class, id, bound)`` triples with bound 0 for a lower
    bound and 1 for an arc capacity. A zero-capacity arc contributes both,
    which duplicates a row without changing the rank.
    """

    tight: frozenset
    rank: int

    def rows(self, net: Network) -> list[list[Fraction]]:
        """Explicit constraint rows; for tests and small instances."""
        rows = balance_matrix(net)
        for cls_, ident, _ in sorted(self.tight):
            rows.append(unit_row(net, cls_, ident))
        return rows


def coordinate_index(net: Network, cls_: int, ident: int) -> int:
    return (0, net.m, net.m + net.n)[cls_] + ident - 1


def unit_row(net: Network, cls_: int, ident: int) -> list[Fraction]:
    row = [Fraction(0)] * net.dimension
    row[coordinate_index(net, cls_, ident)] = Fraction(1)
    return row


def balance_matrix(net: Network) -> list[list[Fraction]]:
    """[A  -I  I] as a list of n rows."""
    rows = [[Fraction(0)] * net.dimension for _ in net.nodes]
    for a in net.arcs:
        rows[a.tail - 1][a.id - 1] += 1
        rows[a.head - 1][a.id - 1] -= 1
    for i in net.nodes:
        rows[i - 1][net.m + i - 1] = Fraction(-1)
        rows[i - 1][net.m + net.n + i - 1] = Fraction(1)
    return rows


def tight_coordinates(net: Network, point: PseudoflowPoint) -> frozenset:
    tight = set()
    for a in net.arcs:
        v = point.x[a.id - 1]
        if v == 0:
            tight.add((X, a.id, 0))
        if v == a.capacity:
            tight.add((X, a.id, 1))
    for i in net.nodes:
        if point.s_plus[i - 1] == 0:
            tight.add((S_PLUS, i, 0))
        if point.s_minus[i - 1] == 0:
            tight.add((S_MINUS, i, 0))
    return frozenset(tight)


def rank_with_fixed(net: Network, fixed: frozenset) -> int:
    """Rank of the balance rows stacked with unit rows for the ``fixed`` constraints.

    Unit rows eliminate their columns, so the rank is the number of distinct
    fixed coordinates plus the rank of the balance rows on the other columns.
    """
    fixed_idx = {coordinate_index(net, c, k) for c, k, *_ in fixed}
    free = [i for i in range(net.dimension) if i not in fixed_idx]
    rows = balance_matrix(net)
    reduced = [[row[i] for i in free] for row in rows]
    return len(fixed_idx) + (linalg.rank(reduced) if free else 0)


def active_set(net: Network, point: PseudoflowPoint) -> ActiveSet:
    _require_feasible(net, point)
    tight = tight_coordinates(net, point)
    return ActiveSet(tight, rank_with_fixed(net, tight))


def is_vertex(net: Network, point: PseudoflowPoint) -> bool:
    """True iff m + 2n linearly independent constraints are active."""
    return active_set(net, point).rank == net.dimension


def is_edge_step(net: Network, p: PseudoflowPoint, q: PseudoflowPoint) -> bool:
    """True iff p and q are adjacent vertices (joined by an edge)."""
    _require_feasible(net, p)
    _require_feasible(net, q)
    if p == q:
        raise ValueError("edge test needs two distinct points")
    if not (is_vertex(net, p) and is_vertex(net, q)):
        return False
    common = tight_coordinates(net, p) & tight_coordinates(net, q)
    return rank_with_fixed(net, common) == net.dimension - 1
