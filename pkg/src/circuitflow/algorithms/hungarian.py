"""Hungarian method (Munkres' star/prime formulation)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..circuits import PathVariant, path_circuit
from ..geometry import zero_pseudoflow_vertex
from ..network import FORWARD, BACKWARD, Network, assignment_to_network, to_fraction
from ..pivot import TraceBuilder, WalkTrace, build_hm_order_objective, with_objective


@dataclass(frozen=True)
class HungarianResult:
    trace: WalkTrace
    assignment: tuple[int, ...]          # assignment[row] = column, 0-based
    cost: Fraction
    order: tuple[tuple[int, int], ...]   # matched (left node, right node) in match order
    network: Network


class _State:
    """Working matrix with star/prime marks and row/column covers."""

    def __init__(self, matrix):
        self.k = len(matrix)
        self.c = [row[:] for row in matrix]
        self.star_in_row: list[int | None] = [None] * self.k
        self.star_in_col: list[int | None] = [None] * self.k
        self.prime_in_row: list[int | None] = [None] * self.k
        self.row_cover = [False] * self.k
        self.col_cover = [False] * self.k

    def star(self, r: int, c: int) -> None:
        self.star_in_row[r] = c
        self.star_in_col[c] = r

    def cover_star_columns(self) -> None:
        self.row_cover = [False] * self.k
        self.col_cover = [self.star_in_col[c] is not None for c in range(self.k)]

    def uncovered_zero(self):
        for r in range(self.k):
            if self.row_cover[r]:
                continue
            for c in range(self.k):
                if not self.col_cover[c] and self.c[r][c] == 0:
                    return r, c
        return None

    def adjust(self) -> None:
        h = min(self.c[r][c] for r in range(self.k) if not self.row_cover[r]
                for c in range(self.k) if not self.col_cover[c])
        for r in range(self.k):
            for c in range(self.k):
                if self.row_cover[r]:
                    self.c[r][c] += h
                if not self.col_cover[c]:
                    self.c[r][c] -= h


def run_hungarian(cost_matrix) -> HungarianResult:
    """Solve the assignment problem and record each matching change as a circuit step.

    Greedy starring adds single-arc steps; every alternating path found from
    a primed zero becomes one path circuit from its unmatched row to its
    unmatched column. All steps have length 1.
    """
    matrix = [[to_fraction(v) for v in row] for row in cost_matrix]
    net = assignment_to_network(matrix)  # validates shape and signs
    k = len(matrix)
    st = _State(matrix)
    trace = TraceBuilder(zero_pseudoflow_vertex(net))
    order: list[tuple[int, int]] = []

    def arc_id(r: int, c: int) -> int:
        return r * k + c + 1

    def record(r0: int, c_end: int, arcs) -> None:
        trace.add(path_circuit(net, arcs, PathVariant.MINUS_PLUS), 1)
        order.append((r0 + 1, k + c_end + 1))

    if k:
        for r in range(k):
            low = min(st.c[r])
            st.c[r] = [v - low for v in st.c[r]]
        for c in range(k):
            low = min(st.c[r][c] for r in range(k))
            for r in range(k):
                st.c[r][c] -= low

    for r in range(k):
        for c in range(k):
            if st.c[r][c] == 0 and st.star_in_row[r] is None and st.star_in_col[c] is None:
                st.star(r, c)
                record(r, c, [(arc_id(r, c), FORWARD)])
    st.cover_star_columns()

    while not all(st.col_cover):
        z = st.uncovered_zero()
        if z is None:
            st.adjust()
            continue
        r, c = z
        st.prime_in_row[r] = c
        if st.star_in_row[r] is not None:
            st.row_cover[r] = True
            st.col_cover[st.star_in_row[r]] = False
            continue
        # alternating path: prime, star in its column, prime in that star's row, ...
        seq = [(r, c)]
        arcs = [(arc_id(r, c), FORWARD)]
        while st.star_in_col[seq[-1][1]] is not None:
            col = seq[-1][1]
            srow = st.star_in_col[col]
            pcol = st.prime_in_row[srow]
            arcs.append((arc_id(srow, col), BACKWARD))
            arcs.append((arc_id(srow, pcol), FORWARD))
            seq.append((srow, pcol))
        for pr, pc in seq[1:]:
            st.star_in_col[st.star_in_row[pr]] = None
        for pr, pc in seq:
            st.star(pr, pc)
        record(r, seq[-1][1], arcs)
        st.prime_in_row = [None] * k
        st.cover_star_columns()

    assignment = tuple(st.star_in_row)
    cost = sum((matrix[r][assignment[r]] for r in range(k)), Fraction(0))
    walk = trace.build()
    if order:
        walk = with_objective(walk, build_hm_order_objective(net, order))
    return HungarianResult(walk, assignment, cost, tuple(order), net)
