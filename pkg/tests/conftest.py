import re

import pytest

CRITERIA = {
    1: "circuit characterization",
    2: "zero-pseudoflow vertex",
    3: "successive shortest paths on the 12-node example",
    4: "Dantzig replicates successive shortest paths",
    5: "shortest augmenting paths on the 6-node example",
    6: "generic augmenting paths can leave the vertex set",
    7: "Hungarian method",
    8: "preflow-push",
    9: "structural invariants",
}

_outcomes: dict[int, list[tuple[str, str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)", item.name)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(int(m.group(1)), []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k, title in CRITERIA.items():
        results = _outcomes.get(k)
        if not results:
            continue
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        extra = f"  (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {k}: {status}  {title}{extra}")
