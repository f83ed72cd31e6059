import os
import sys
from collections import defaultdict

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_results: dict[int, dict] = defaultdict(lambda: {"title": "", "outcomes": []})


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = report.user_properties and dict(report.user_properties).get("acceptance")
    if not marker:
        return
    num, title = marker
    entry = _results[num]
    entry["title"] = title
    entry["outcomes"].append((report.nodeid.split("::")[-1], report.outcome))


@pytest.fixture(autouse=True)
def _tag_acceptance(request):
    m = request.node.get_closest_marker("acceptance")
    if m:
        request.node.user_properties.append(("acceptance", (m.args[0], m.args[1])))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        entry = _results[num]
        ok = all(o == "passed" for _, o in entry["outcomes"])
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {entry['title']}"
        if not ok:
            bad = [name for name, o in entry["outcomes"] if o != "passed"]
            line += f"  (failing: {', '.join(bad)})"
        terminalreporter.write_line(line)
