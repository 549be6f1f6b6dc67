"""Problem instances: networks, parsers, serializers and residual networks."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


class NetworkError(ValueError):
    """Raised when a network violates a structural invariant."""


class ParseError(ValueError):
    """Raised for malformed instance text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use int, Fraction or a decimal string")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


# --- instance kinds -------------------------------------------------------

@dataclass(frozen=True)
class MinCost:
    name = "mincost"


@dataclass(frozen=True)
class MaxFlow:
    source: int
    sink: int
    name = "maxflow"


@dataclass(frozen=True)
class Assignment:
    left: tuple[int, ...]
    right: tuple[int, ...]
    name = "assignment"


Kind = Union[MinCost, MaxFlow, Assignment]


@dataclass(frozen=True)
class Arc:
    id: int
    tail: int
    head: int
    capacity: Fraction
    cost: Fraction


@dataclass(frozen=True)
class Network:
    """Directed network with node ids 1..n and arc ids 1..m.

    ``balances[i - 1]`` is b_i. Arc ids are positional: ``arcs[a - 1].id == a``.
    """

    n: int
    arcs: tuple[Arc, ...]
    balances: tuple[Fraction, ...]
    kind: Kind = field(default_factory=MinCost)
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise NetworkError("node count must be nonnegative")
        if len(self.balances) != self.n:
            raise NetworkError("need exactly one balance per node")
        for pos, a in enumerate(self.arcs, start=1):
            if a.id != pos:
                raise NetworkError(f"arc ids must be 1..m in order (got {a.id} at {pos})")
            for end in (a.tail, a.head):
                if not 1 <= end <= self.n:
                    raise NetworkError(f"arc {a.id} references unknown node {end}")
            if a.tail == a.head:
                raise NetworkError(f"arc {a.id} is a self-loop")
            if a.capacity < 0:
                raise NetworkError(f"arc {a.id} has negative capacity")
        kind = self.kind
        if isinstance(kind, MaxFlow):
            if any(b != 0 for b in self.balances):
                raise NetworkError("max-flow instances carry zero balances")
            for v in (kind.source, kind.sink):
                if not 1 <= v <= self.n:
                    raise NetworkError(f"unknown terminal node {v}")
            if kind.source == kind.sink:
                raise NetworkError("source and sink must differ")
        else:
            if sum(self.balances) != 0:
                raise NetworkError("balances must sum to zero")
            for a in self.arcs:
                if a.cost < 0:
                    raise NetworkError(f"arc {a.id} has negative cost")
        if isinstance(kind, Assignment):
            self._check_assignment(kind)

    def _check_assignment(self, kind: Assignment):
        left, right = set(kind.left), set(kind.right)
        if len(kind.left) != len(kind.right) or left & right or left | right != set(self.nodes):
            raise NetworkError("assignment sides must partition the nodes into equal halves")
        for v in left:
            if self.balances[v - 1] != 1:
                raise NetworkError("left nodes must have balance 1")
        for v in right:
            if self.balances[v - 1] != -1:
                raise NetworkError("right nodes must have balance -1")
        pairs = set()
        for a in self.arcs:
            if a.tail not in left or a.head not in right or a.capacity != 1:
                raise NetworkError("assignment arcs run left to right with capacity 1")
            pairs.add((a.tail, a.head))
        if len(pairs) != len(self.arcs) or len(pairs) != len(left) * len(right):
            raise NetworkError("assignment arc set must be complete bipartite")

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    def arc(self, arc_id: int) -> Arc:
        if not 1 <= arc_id <= self.m:
            raise KeyError(f"unknown arc {arc_id}")
        return self.arcs[arc_id - 1]

    def balance(self, node: int) -> Fraction:
        return self.balances[node - 1]

    def label(self, node: int) -> str:
        if self.labels is not None:
            return self.labels[node - 1]
        return str(node)

    @property
    def dimension(self) -> int:
        """Number of coordinates of the pseudoflow polyhedron, m + 2n."""
        return self.m + 2 * self.n


def make_network(n: int, arcs: Iterable[Sequence], balances=None, kind: Kind | None = None,
                 labels=None) -> Network:
    """Build a network from plain tuples ``(tail, head, capacity[, cost])``."""
    built = []
    for pos, spec in enumerate(arcs, start=1):
        tail, head, cap = spec[0], spec[1], spec[2]
        cost = spec[3] if len(spec) > 3 else 0
        built.append(Arc(pos, int(tail), int(head), to_fraction(cap), to_fraction(cost)))
    if balances is None:
        bal = (Fraction(0),) * n
    elif isinstance(balances, dict):
        bal = tuple(to_fraction(balances.get(i, 0)) for i in range(1, n + 1))
    else:
        bal = tuple(to_fraction(b) for b in balances)
    return Network(n, tuple(built), bal, kind if kind is not None else MinCost(),
                   tuple(labels) if labels is not None else None)


def assignment_to_network(cost_matrix) -> Network:
    """Assignment network: rows become nodes 1..k, columns nodes k+1..2k.

    Arc (row r, column c) gets id r*k + c + 1 (0-based r, c).
    """
    rows = [list(r) for r in cost_matrix]
    k = len(rows)
    if any(len(r) != k for r in rows):
        raise NetworkError("cost matrix must be square")
    arcs = []
    for r, row in enumerate(rows):
        for c, value in enumerate(row):
            value = to_fraction(value)
            if value < 0:
                raise NetworkError("cost matrix entries must be nonnegative")
            arcs.append((r + 1, k + c + 1, 1, value))
    balances = [1] * k + [-1] * k
    kind = Assignment(tuple(range(1, k + 1)), tuple(range(k + 1, 2 * k + 1)))
    return make_network(2 * k, arcs, balances, kind)


def cost_matrix(net: Network) -> list[list[Fraction]]:
    """Recover the square cost matrix of an assignment network."""
    if not isinstance(net.kind, Assignment):
        raise NetworkError("not an assignment network")
    left, right = net.kind.left, net.kind.right
    col = {t: j for j, t in enumerate(right)}
    row = {l: i for i, l in enumerate(left)}
    matrix = [[Fraction(0)] * len(right) for _ in left]
    for a in net.arcs:
        matrix[row[a.tail]][col[a.head]] = a.cost
    return matrix


# --- text formats ------------------------------------------------------------

FORMATS = ("dimacs-min", "dimacs-max", "csv")


def guess_format(path: str) -> str:
    lower = str(path).lower()
    if lower.endswith(".min"):
        return "dimacs-min"
    if lower.endswith(".max"):
        return "dimacs-max"
    if lower.endswith(".csv"):
        return "csv"
    raise ParseError(f"cannot infer instance format from {path!r}")


def _number(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad number {token!r}", lineno) from None


def _integer(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"bad integer {token!r}", lineno) from None


def parse_network(text: Union[bytes, str], format: str) -> Network:
    """Parse an instance in one of ``FORMATS``."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    if format == "csv":
        return _parse_csv(text)
    if format in ("dimacs-min", "dimacs-max"):
        return _parse_dimacs(text, format)
    raise ParseError(f"unknown format {format!r}")


def _parse_csv(text: str) -> Network:
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c.strip() for c in row]
        if not cells or all(c == "" for c in cells):
            continue
        if cells[0].startswith("#"):
            continue
        rows.append([_number(c, lineno) for c in cells])
    try:
        return assignment_to_network(rows)
    except NetworkError as exc:
        raise ParseError(str(exc)) from None


def _parse_dimacs(text: str, format: str) -> Network:
    want = "min" if format == "dimacs-min" else "max"
    n = m = None
    balances: dict[int, Fraction] = {}
    terminals: dict[str, int] = {}
    labels: dict[int, str] = {}
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tok = line.split()
        tag = tok[0]
        if tag == "c":
            # optional display labels: "c label <node> <text>"
            if len(tok) >= 4 and tok[1] == "label":
                labels[_integer(tok[2], lineno)] = " ".join(tok[3:])
            continue
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(tok) != 4 or tok[1] != want:
                raise ParseError(f"expected 'p {want} <nodes> <arcs>'", lineno)
            n, m = _integer(tok[2], lineno), _integer(tok[3], lineno)
            if n < 0 or m < 0:
                raise ParseError("negative size", lineno)
            continue
        if n is None:
            raise ParseError("problem line must come first", lineno)
        if tag == "n":
            if len(tok) != 3:
                raise ParseError("node line needs 2 fields", lineno)
            node = _integer(tok[1], lineno)
            if not 1 <= node <= n:
                raise ParseError(f"node {node} out of range 1..{n}", lineno)
            if want == "min":
                balances[node] = _number(tok[2], lineno)
            else:
                if tok[2] not in ("s", "t") or tok[2] in terminals:
                    raise ParseError("expected one 's' and one 't' node line", lineno)
                terminals[tok[2]] = node
            continue
        if tag == "a":
            if want == "min":
                if len(tok) != 6:
                    raise ParseError("arc line needs 'a tail head low cap cost'", lineno)
                tail, head = _integer(tok[1], lineno), _integer(tok[2], lineno)
                low, cap, cost = (_number(t, lineno) for t in tok[3:6])
                if low != 0:
                    raise ParseError("nonzero lower bounds are not supported", lineno)
            else:
                if len(tok) != 4:
                    raise ParseError("arc line needs 'a tail head cap'", lineno)
                tail, head = _integer(tok[1], lineno), _integer(tok[2], lineno)
                cap, cost = _number(tok[3], lineno), Fraction(0)
            for v in (tail, head):
                if not 1 <= v <= n:
                    raise ParseError(f"node {v} out of range 1..{n}", lineno)
            arcs.append((tail, head, cap, cost, lineno))
            continue
        raise ParseError(f"unknown line tag {tag!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    if len(arcs) != m:
        raise ParseError(f"problem line announces {m} arcs, found {len(arcs)}")
    if want == "max" and set(terminals) != {"s", "t"}:
        raise ParseError("max-flow instance needs both 's' and 't' node lines")
    for tail, head, cap, cost, lineno in arcs:
        if tail == head:
            raise ParseError("self-loop", lineno)
        if cap < 0:
            raise ParseError("negative capacity", lineno)
        if want == "min" and cost < 0:
            raise ParseError("negative cost", lineno)
    kind: Kind = MaxFlow(terminals["s"], terminals["t"]) if want == "max" else MinCost()
    label_tuple = None
    if labels:
        label_tuple = tuple(labels.get(i, str(i)) for i in range(1, n + 1))
    try:
        return make_network(n, [a[:4] for a in arcs], balances, kind, label_tuple)
    except NetworkError as exc:
        raise ParseError(str(exc)) from None


def serialize_network(net: Network, format: str | None = None) -> str:
    """Inverse of :func:`parse_network`."""
    if format is None:
        format = {"maxflow": "dimacs-max", "assignment": "csv"}.get(net.kind.name, "dimacs-min")
    if format == "csv":
        return "\n".join(",".join(format_rational(v) for v in row)
                         for row in cost_matrix(net)) + "\n"
    out = []
    if net.labels is not None:
        out += [f"c label {i} {net.labels[i - 1]}" for i in net.nodes
                if net.labels[i - 1] != str(i)]
    if format == "dimacs-min":
        if isinstance(net.kind, MaxFlow):
            raise NetworkError("max-flow network cannot be written as dimacs-min")
        out.append(f"p min {net.n} {net.m}")
        out += [f"n {i} {format_rational(net.balance(i))}" for i in net.nodes if net.balance(i) != 0]
        out += [f"a {a.tail} {a.head} 0 {format_rational(a.capacity)} {format_rational(a.cost)}"
                for a in net.arcs]
    elif format == "dimacs-max":
        if not isinstance(net.kind, MaxFlow):
            raise NetworkError("only max-flow networks can be written as dimacs-max")
        out.append(f"p max {net.n} {net.m}")
        out.append(f"n {net.kind.source} s")
        out.append(f"n {net.kind.sink} t")
        out += [f"a {a.tail} {a.head} {format_rational(a.capacity)}" for a in net.arcs]
    else:
        raise NetworkError(f"unknown format {format!r}")
    return "\n".join(out) + "\n"


def load_network(path, format: str | None = None) -> Network:
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_network(data, format or guess_format(path))


# --- residual networks ----------------------------------------------------

FORWARD = 1
BACKWARD = -1


@dataclass(frozen=True)
class ResidualArc:
    arc: int
    direction: int  # FORWARD or BACKWARD
    tail: int
    head: int
    residual: Fraction
    cost: Fraction


@dataclass(frozen=True)
class ResidualNetwork:
    n: int
    arcs: tuple[ResidualArc, ...]

    def out_arcs(self, node: int) -> list[ResidualArc]:
        return [r for r in self.arcs if r.tail == node]


def residual_arcs(net: Network, x: Sequence[Fraction]) -> tuple[ResidualArc, ...]:
    out = []
    for a in net.arcs:
        flow = x[a.id - 1]
        if flow < 0 or flow > a.capacity:
            raise NetworkError(f"flow on arc {a.id} violates its capacity bounds")
        if flow < a.capacity:
            out.append(ResidualArc(a.id, FORWARD, a.tail, a.head, a.capacity - flow, a.cost))
        if flow > 0:
            out.append(ResidualArc(a.id, BACKWARD, a.head, a.tail, flow, -a.cost))
    return tuple(out)


def build_residual(net: Network, point) -> ResidualNetwork:
    """Residual network of the flow part of ``point`` (a PseudoflowPoint or a flow vector)."""
    x = point.x if hasattr(point, "x") else tuple(to_fraction(v) for v in point)
    if len(x) != net.m:
        raise NetworkError("flow vector length differs from arc count")
    return ResidualNetwork(net.n, residual_arcs(net, x))
