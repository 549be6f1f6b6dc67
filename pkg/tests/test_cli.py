import json
import subprocess
import sys

import jsonschema
import pytest

from circuitflow import fixtures
from circuitflow.cli import main
from circuitflow.io import load_schema

TIE_MATRIX = "3,2,1\n0,1,1\n0,1,3\n"


def fx(name):
    return str(fixtures.path(name))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def validate(path, schema):
    data = json.loads(open(path).read())
    jsonschema.validate(data, load_schema(schema))
    return data


def test_run_sspa(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, text, _ = run(capsys, "run", "sspa", fx("fig4.min"), "-o", str(out))
    assert code == 0
    assert "steps: 4" in text and "cost: 24" in text
    data = validate(out, "trace")
    assert [s["alpha"] for s in data["steps"]] == ["1"] * 4


def test_run_sapa_and_classify(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, text, _ = run(capsys, "run", "sapa", fx("fig9.max"), "-o", str(out))
    assert code == 0 and "flow value: 11" in text
    cls_out = tmp_path / "c.json"
    code, text, _ = run(capsys, "classify", str(out), fx("fig9.max"), "--face", "gapa",
                        "-o", str(cls_out))
    assert code == 0 and text.strip() == "edge"
    assert validate(cls_out, "classify")["walk_class"] == "edge"


def test_run_preflow_priority(capsys, tmp_path):
    out = tmp_path / "p.json"
    code, text, _ = run(capsys, "run", "preflow-push", fx("fig7.max"),
                        "--active-rule", "3,2,1,4", "-o", str(out))
    assert code == 0 and "flow value: 7" in text
    data = validate(out, "trace")
    assert any(e["type"] == "relabel" for e in data["events"])
    code, text, _ = run(capsys, "classify", str(out), fx("fig7.max"), "--face", "pfp")
    assert text.strip() == "general"


def test_run_hungarian(capsys):
    code, text, _ = run(capsys, "run", "hungarian", fx("fixture3x3.csv"))
    assert code == 0 and "cost: 5" in text


def test_run_augment_with_objective_file(capsys, tmp_path):
    from circuitflow.pivot import build_maxflow_objective
    net = fixtures.load("fig9.max")
    obj = tmp_path / "obj.json"
    obj.write_text(json.dumps(build_maxflow_objective(net).to_json()))
    jsonschema.validate(json.loads(obj.read_text()), load_schema("objective"))
    out = tmp_path / "t.json"
    code, text, _ = run(capsys, "run", "augment", fx("fig9.max"), "--pivot", "steepest",
                        "--objective", str(obj), "-o", str(out))
    assert code == 0 and "status: optimal" in text
    sapa = tmp_path / "s.json"
    run(capsys, "run", "sapa", fx("fig9.max"), "-o", str(sapa))
    a, b = json.loads(out.read_text()), json.loads(sapa.read_text())
    assert [s["point_after"] for s in a["steps"]] == [s["point_after"] for s in b["steps"]]


def test_verify(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "verify", "sapa", fx("fig9.max"), "-o", str(out))
    assert code == 0 and "equal: true" in text
    data = validate(out, "report")
    assert data["equal"] is True and data["divergence"] is None


def test_verify_divergence_exit_code(capsys, tmp_path):
    inst = tmp_path / "tie.csv"
    inst.write_text(TIE_MATRIX)
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "verify", "hm", str(inst), "-o", str(out))
    assert code == 5 and "equal: false" in text
    assert validate(out, "report")["divergence"]["step"] >= 0


def test_circuits(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, text, _ = run(capsys, "circuits", fx("fig2.min"), "-o", str(out))
    assert code == 0
    assert "cycle: 6" in text and "trivial: 8" in text
    data = validate(out, "circuits")
    assert data["total"] == len(data["circuits"]) == 166


def test_export_views(capsys, tmp_path):
    for view in ("original", "pseudoflow", "residual"):
        code, text, _ = run(capsys, "export", fx("fig4.min"), "--view", view)
        assert code == 0 and text.startswith(f"digraph {view}")
    assert "style=dashed" in run(capsys, "export", fx("fig4.min"), "--view", "pseudoflow")[1]
    trace = tmp_path / "t.json"
    run(capsys, "run", "sspa", fx("fig4.min"), "-o", str(trace))
    code, text, _ = run(capsys, "export", fx("fig4.min"), "--view", "residual",
                        "--trace", str(trace))
    assert code == 0 and "style=dotted" in text  # backward residual arcs


def test_random_is_seeded(capsys, tmp_path):
    for kind, ext in (("mincost", "min"), ("maxflow", "max"), ("assignment", "csv")):
        a = run(capsys, "random", kind, "--seed", "4", "--nodes", "5")[1]
        b = run(capsys, "random", kind, "--seed", "4", "--nodes", "5")[1]
        assert a == b
        path = tmp_path / f"r.{ext}"
        path.write_text(a)
        assert run(capsys, "run", "sapa" if kind == "maxflow" else "sspa", str(path))[0] == 0


def test_outputs_are_deterministic(capsys, tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"t{k}.json"
        run(capsys, "run", "preflow-push", fx("fig6.max"), "-o", str(out))
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


@pytest.mark.parametrize("argv, code", [
    (["run", "sspa", "MISSING.min"], 1),
    (["run", "sspa", "BAD"], 1),
    (["run", "sapa", "FIG4"], 3),
    (["run", "sspa", "FIG4", "--pivot", "dantzig"], 3),
    (["run", "augment", "FIG4"], 3),
    (["run", "gapa", "FIG9", "--active-rule", "fifo"], 3),
    (["run", "preflow-push", "FIG7", "--active-rule", "a,b"], 3),
    (["run", "sspa", "INFEASIBLE"], 2),
    (["circuits", "FIG6"], 4),
    (["circuits", "FIG2", "--guard", "10"], 4),
    (["export", "FIG4", "--trace", "FIG4"], 3),
])
def test_exit_codes(capsys, tmp_path, argv, code):
    bad = tmp_path / "bad.min"
    bad.write_text("p min 2 1\nzz\n")
    infeasible = tmp_path / "inf.min"
    infeasible.write_text("p min 3 1\nn 1 1\nn 3 -1\na 1 2 0 1 1\n")
    names = {"FIG4": fx("fig4.min"), "FIG2": fx("fig2.min"), "FIG6": fx("fig6.max"),
             "FIG7": fx("fig7.max"), "FIG9": fx("fig9.max"), "BAD": str(bad),
             "INFEASIBLE": str(infeasible), "MISSING.min": str(tmp_path / "missing.min")}
    assert main([names.get(a, a) for a in argv]) == code


def test_usage_errors_exit_3(capsys):
    for argv in (["run", "bogus", fx("fig4.min")], ["verify"], []):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 3


def test_bad_trace_file_is_a_parse_error(capsys, tmp_path):
    trace = tmp_path / "t.json"
    trace.write_text("{not json")
    assert run(capsys, "classify", str(trace), fx("fig4.min"))[0] == 1


def test_invalid_trace_is_rejected(capsys, tmp_path):
    trace = tmp_path / "t.json"
    run(capsys, "run", "sapa", fx("fig9.max"), "-o", str(trace))
    data = json.loads(trace.read_text())
    data["steps"][0]["alpha"] = "1"
    trace.write_text(json.dumps(data))
    assert run(capsys, "classify", str(trace), fx("fig9.max"))[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "circuitflow", "run", "sspa", fx("fig4.min")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "cost: 24" in proc.stdout
