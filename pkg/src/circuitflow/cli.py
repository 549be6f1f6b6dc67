"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 infeasible instance or point,
3 flag conflict or usage error, 4 size guard exceeded, 5 replication
check found a divergence.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import io
from .algorithms import InfeasibleInstanceError, run_gapa, run_hungarian, run_preflow_push, run_sspa
from .circuits import SizeGuardError, enumerate_circuits
from .geometry import FACE_ALGORITHMS, InfeasiblePointError, face_for, zero_pseudoflow_vertex
from .network import (Assignment, MaxFlow, NetworkError, ParseError, cost_matrix, load_network,
                      serialize_network)
from .pivot import (Objective, PivotRule, augment, build_maxflow_objective, build_sspa_objective)
from .verify import InvalidTraceError, classify_walk, verify_replication

EXIT_OK, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_FLAGS, EXIT_GUARD, EXIT_DIVERGED = 0, 1, 2, 3, 4, 5

RUN_ALGORITHMS = ("sspa", "gapa", "sapa", "hungarian", "preflow-push", "augment")


class FlagConflict(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FLAGS, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="circuitflow", description="Circuit walks of classical flow algorithms.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="run an algorithm or a circuit augmentation")
    run.add_argument("algorithm", choices=RUN_ALGORITHMS)
    run.add_argument("instance")
    run.add_argument("--format", choices=("dimacs-min", "dimacs-max", "csv"))
    run.add_argument("-o", "--output", help="write the trace JSON here")
    run.add_argument("--path-rule", choices=("bfs", "dfs"))
    run.add_argument("--active-rule", help="lowest-id, fifo, or a comma-separated node priority")
    run.add_argument("--pairing", choices=("key", "pair-lex"))
    run.add_argument("--no-potentials", action="store_true")
    run.add_argument("--pivot", choices=[r.value for r in PivotRule])
    run.add_argument("--objective", help="auto or an objective JSON file")
    run.add_argument("--face", choices=("auto", "none") + FACE_ALGORITHMS)
    run.add_argument("--candidates", choices=("structured", "exhaustive"))
    run.add_argument("--step-limit", type=int)

    ver = sub.add_parser("verify", help="check that circuit augmentation replicates a run")
    ver.add_argument("algorithm", choices=("sspa", "gapa", "sapa", "hm"))
    ver.add_argument("instance")
    ver.add_argument("--format", choices=("dimacs-min", "dimacs-max", "csv"))
    ver.add_argument("--mode", choices=("point-sequence", "circuit-sequence"),
                     default="point-sequence")
    ver.add_argument("--candidates", choices=("structured", "exhaustive"), default="structured")
    ver.add_argument("--path-rule", choices=("bfs", "dfs"), default="bfs")
    ver.add_argument("-o", "--output", help="write the report JSON here")

    cir = sub.add_parser("circuits", help="enumerate all circuits of a small instance")
    cir.add_argument("instance")
    cir.add_argument("--format", choices=("dimacs-min", "dimacs-max", "csv"))
    cir.add_argument("--guard", type=int, help="override the m + 2n size guard")
    cir.add_argument("-o", "--output", help="write the circuits JSON here")

    cla = sub.add_parser("classify", help="classify a trace as edge, vertex or general walk")
    cla.add_argument("trace")
    cla.add_argument("instance")
    cla.add_argument("--format", choices=("dimacs-min", "dimacs-max", "csv"))
    cla.add_argument("--face", choices=("none",) + FACE_ALGORITHMS, default="none")
    cla.add_argument("-o", "--output", help="write the classification JSON here")

    exp = sub.add_parser("export", help="write a Graphviz DOT view of an instance")
    exp.add_argument("instance")
    exp.add_argument("--format", choices=("dimacs-min", "dimacs-max", "csv"))
    exp.add_argument("--view", choices=("original", "pseudoflow", "residual"), default="original")
    exp.add_argument("--trace", help="residual view at the final point of this trace")
    exp.add_argument("-o", "--output")

    rnd = sub.add_parser("random", help="write a seeded random instance")
    rnd.add_argument("kind", choices=("mincost", "maxflow", "assignment"))
    rnd.add_argument("--nodes", type=int, default=6)
    rnd.add_argument("--seed", type=int, default=0)
    rnd.add_argument("-o", "--output")
    return p


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args):
    return load_network(args.instance, args.format)


def _check_run_flags(args) -> None:
    algo = args.algorithm
    only = {
        "path_rule": ("gapa", "augment"),
        "active_rule": ("preflow-push",),
        "pairing": ("sspa",),
        "no_potentials": ("sspa",),
        "pivot": ("augment",),
        "objective": ("augment",),
        "face": ("augment",),
        "candidates": ("augment",),
        "step_limit": ("augment",),
    }
    for flag, allowed in only.items():
        value = getattr(args, flag)
        if value not in (None, False) and algo not in allowed:
            raise FlagConflict(f"--{flag.replace('_', '-')} does not apply to '{algo}'")
    if algo == "augment" and args.pivot is None:
        raise FlagConflict("augment needs --pivot")


def _auto_objective(net):
    if isinstance(net.kind, MaxFlow):
        return build_maxflow_objective(net)
    return build_sspa_objective(net)


def _auto_face(net):
    if isinstance(net.kind, MaxFlow):
        return face_for(net, "gapa")
    if isinstance(net.kind, Assignment):
        return face_for(net, "hm")
    return face_for(net, "sspa")


def cmd_run(args) -> int:
    _check_run_flags(args)
    net = _load(args)
    algo = args.algorithm
    lines = [f"algorithm: {algo}"]
    if algo == "sspa":
        res = run_sspa(net, pairing=args.pairing or "key", potentials=not args.no_potentials)
        trace = res.trace
        lines.append(f"cost: {io.rational(res.cost)}")
    elif algo in ("gapa", "sapa"):
        res = run_gapa(net, "bfs" if algo == "sapa" else (args.path_rule or "bfs"))
        trace = res.trace
        lines.append(f"flow value: {io.rational(res.value)}")
    elif algo == "hungarian":
        if not isinstance(net.kind, Assignment):
            raise FlagConflict("hungarian needs an assignment instance")
        res = run_hungarian(cost_matrix(net))
        trace = res.trace
        lines.append(f"cost: {io.rational(res.cost)}")
        lines.append("assignment: " + ", ".join(f"{r + 1}->{c + 1}" for r, c in enumerate(res.assignment)))
    elif algo == "preflow-push":
        rule = args.active_rule or "lowest-id"
        if rule not in ("lowest-id", "fifo"):
            try:
                rule = [int(v) for v in rule.split(",")]
            except ValueError:
                raise FlagConflict("--active-rule must be lowest-id, fifo or node ids") from None
        res = run_preflow_push(net, rule)
        trace = res.trace
        lines.append(f"flow value: {io.rational(res.value)}")
    else:
        if args.objective in (None, "auto"):
            objective = _auto_objective(net)
        else:
            try:
                objective = Objective.from_json(Path(args.objective).read_text(), net)
            except (ValueError, KeyError) as exc:
                raise ParseError(f"objective file: {exc}") from None
        if args.face in (None, "auto"):
            face = _auto_face(net)
        elif args.face == "none":
            face = None
        else:
            face = face_for(net, args.face)
        trace = augment(net, face, objective, args.pivot, zero_pseudoflow_vertex(net),
                        step_limit=args.step_limit or 1000, mode=args.candidates or "structured",
                        path_rule=args.path_rule or "bfs")
        lines.append(f"status: {trace.status}")
    lines.insert(1, f"steps: {len(trace.steps)}")
    if trace.steps:
        lines.append(f"objective: {io.rational(trace.steps[-1].objective_after)}")
    if args.output:
        Path(args.output).write_text(io.dumps(io.trace_to_json(trace)))
    print("\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    net = _load(args)
    report = verify_replication(net, args.algorithm, args.mode,
                                structured=args.candidates == "structured",
                                path_rule=args.path_rule)
    if args.output:
        Path(args.output).write_text(io.dumps(io.report_to_json(report)))
    print(f"algorithm: {report.algorithm}")
    print(f"equal: {'true' if report.equal else 'false'}")
    print(f"steps: {report.steps}")
    print(f"walk classes: {report.walk_class_a} / {report.walk_class_b}")
    if report.divergence is not None:
        print(f"first divergence at step {report.divergence.step}")
    return EXIT_OK if report.equal else EXIT_DIVERGED


def cmd_circuits(args) -> int:
    net = _load(args)
    data = io.circuits_to_json(enumerate_circuits(net, args.guard))
    if args.output:
        Path(args.output).write_text(io.dumps(data))
    c = data["counts"]
    print(f"path: {c['path']}\ncycle: {c['cycle']}\ntrivial: {c['trivial']}\ntotal: {data['total']}")
    return EXIT_OK


def cmd_classify(args) -> int:
    net = _load(args)
    try:
        trace = io.trace_from_json(Path(args.trace).read_bytes())
    except (ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"trace file: {exc}") from None
    face = None if args.face == "none" else face_for(net, args.face)
    result = classify_walk(net, trace, face)
    if args.output:
        Path(args.output).write_text(io.dumps(io.classify_to_json(result)))
    print(result.kind)
    return EXIT_OK


def cmd_export(args) -> int:
    net = _load(args)
    point = None
    if args.trace:
        if args.view != "residual":
            raise FlagConflict("--trace only applies to the residual view")
        try:
            point = io.trace_from_json(Path(args.trace).read_bytes()).final
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"trace file: {exc}") from None
    _emit(io.to_dot(net, args.view, point), args.output)
    return EXIT_OK


def cmd_random(args) -> int:
    from . import generators
    rng = random.Random(args.seed)
    if args.kind == "mincost":
        net = generators.random_mincost(rng, args.nodes)
    elif args.kind == "maxflow":
        net = generators.random_maxflow(rng, args.nodes)
    else:
        net = generators.random_assignment(rng, args.nodes)
    _emit(serialize_network(net), args.output)
    return EXIT_OK


COMMANDS = {"run": cmd_run, "verify": cmd_verify, "circuits": cmd_circuits,
            "classify": cmd_classify, "export": cmd_export, "random": cmd_random}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ParseError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InfeasibleInstanceError, InfeasiblePointError, InvalidTraceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (FlagConflict, NetworkError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except SizeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
