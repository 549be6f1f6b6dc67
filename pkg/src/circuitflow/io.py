"""JSON and DOT serialization of points, circuits, traces and reports."""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any

from .circuits import Circuit, PathKind, TrivialKind
from .geometry import S_MINUS, S_PLUS, X, PseudoflowPoint, zero_pseudoflow_vertex
from .network import MaxFlow, Network, build_residual
from .pivot import Step, WalkTrace

SCHEMAS = ("trace", "circuits", "report", "classify", "objective")


def rational(v: Fraction) -> str:
    return str(Fraction(v))


def dumps(data: Any) -> str:
    """Deterministic JSON text (stable key order, trailing newline)."""
    return json.dumps(data, indent=2) + "\n"


# --- points and circuits --------------------------------------------------

def point_to_json(p: PseudoflowPoint) -> dict:
    def block(vals):
        return {str(i): rational(v) for i, v in enumerate(vals, start=1)}
    return {"x": block(p.x), "s_plus": block(p.s_plus), "s_minus": block(p.s_minus)}


def point_from_json(data: dict) -> PseudoflowPoint:
    def block(name):
        items = sorted(data[name].items(), key=lambda kv: int(kv[0]))
        if [int(k) for k, _ in items] != list(range(1, len(items) + 1)):
            raise ValueError(f"point block {name!r} must list ids 1..k")
        return tuple(Fraction(v) for _, v in items)
    return PseudoflowPoint(block("x"), block("s_plus"), block("s_minus"))


def circuit_to_json(g: Circuit) -> dict:
    out = {"x": {}, "s_plus": {}, "s_minus": {}}
    names = {X: "x", S_PLUS: "s_plus", S_MINUS: "s_minus"}
    for c, i, s in g.entries:
        out[names[c]][str(i)] = s
    return out


def circuit_from_json(data: dict) -> Circuit:
    return Circuit.from_maps(data.get("x"), data.get("s_plus"), data.get("s_minus"))


def kind_to_json(g: Circuit) -> dict:
    kind = g.kind
    if isinstance(kind, PathKind):
        return {"type": "path", "from": kind.from_, "to": kind.to,
                "variant": kind.variant.value, "sign": kind.sign}
    if isinstance(kind, TrivialKind):
        return {"type": "trivial", "node": kind.node, "sign": kind.sign}
    return {"type": "cycle", "sign": kind.sign}


# --- traces ---------------------------------------------------------------

def trace_to_json(trace: WalkTrace) -> dict:
    return {
        "start": point_to_json(trace.start),
        "steps": [{
            "kind": s.circuit.kind.name,
            "circuit": circuit_to_json(s.circuit),
            "alpha": rational(s.alpha),
            "point_after": point_to_json(s.point_after),
            "objective_after": rational(s.objective_after),
        } for s in trace.steps],
        "events": [dict(e) for e in trace.events],
        "status": trace.status,
    }


def trace_from_json(data) -> WalkTrace:
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    steps = []
    for s in data["steps"]:
        g = circuit_from_json(s["circuit"])
        if g.kind.name != s["kind"]:
            raise ValueError(f"step kind {s['kind']!r} does not match its circuit")
        steps.append(Step(g, Fraction(s["alpha"]), point_from_json(s["point_after"]),
                          Fraction(s["objective_after"])))
    return WalkTrace(point_from_json(data["start"]), tuple(steps),
                     tuple(data.get("events", [])), data["status"])


def circuits_to_json(circuits) -> dict:
    counts = {"path": 0, "cycle": 0, "trivial": 0}
    items = []
    for g in circuits:
        info = kind_to_json(g)
        counts[info["type"]] += 1
        items.append({"kind": info, "circuit": circuit_to_json(g)})
    return {"counts": counts, "total": len(items), "circuits": items}


def report_to_json(report) -> dict:
    div = report.divergence
    return {
        "algorithm": report.algorithm,
        "equal": report.equal,
        "divergence": None if div is None else {
            "step": div.step,
            "circuit_a": None if div.circuit_a is None else circuit_to_json(div.circuit_a),
            "circuit_b": None if div.circuit_b is None else circuit_to_json(div.circuit_b),
        },
        "walk_class_a": report.walk_class_a,
        "walk_class_b": report.walk_class_b,
        "steps": report.steps,
    }


def classify_to_json(walk_class) -> dict:
    return {"walk_class": walk_class.kind, "labels": list(walk_class.labels)}


def load_schema(name: str) -> dict:
    if name not in SCHEMAS:
        raise KeyError(f"unknown schema {name!r}")
    text = (resources.files("circuitflow") / "schemas" / f"{name}.schema.json").read_text()
    return json.loads(text)


# --- DOT ------------------------------------------------------------------

def _dot_id(net: Network, v: int) -> str:
    return json.dumps(net.label(v))


def to_dot(net: Network, view: str = "original", point: PseudoflowPoint | None = None) -> str:
    """Graphviz text. Slack arcs of the pseudoflow view are dashed."""
    if view not in ("original", "pseudoflow", "residual"):
        raise ValueError("view must be original, pseudoflow or residual")
    lines = [f"digraph {view} {{", "  rankdir=LR;"]
    for v in net.nodes:
        attrs = [f"label={_dot_id(net, v)}"]
        b = net.balance(v)
        if b != 0:
            attrs.append(f'xlabel="b={rational(b)}"')
        if isinstance(net.kind, MaxFlow) and v in (net.kind.source, net.kind.sink):
            attrs.append("shape=doublecircle")
        lines.append(f"  n{v} [{', '.join(attrs)}];")
    if view == "residual":
        if point is None:
            point = zero_pseudoflow_vertex(net)
        for r in build_residual(net, point).arcs:
            style = "" if r.direction > 0 else ", style=dotted"
            lines.append(f'  n{r.tail} -> n{r.head} [label="r={rational(r.residual)} '
                         f'c={rational(r.cost)}"{style}];')
    else:
        for a in net.arcs:
            lines.append(f'  n{a.tail} -> n{a.head} [label="u={rational(a.capacity)} '
                         f'c={rational(a.cost)}"];')
    if view == "pseudoflow":
        lines.append('  dummy [label="d", shape=box];')
        for v in net.nodes:
            lines.append(f'  dummy -> n{v} [label="s+{v}", style=dashed];')
            lines.append(f'  n{v} -> dummy [label="s-{v}", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
