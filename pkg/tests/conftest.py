from __future__ import annotations

import pytest

_CRITERIA: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    summary = dict(item.user_properties).get("summary", "")
    _CRITERIA[item.nodeid] = {"number": number, "title": title, "passed": report.passed, "summary": summary}


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for row in sorted(_CRITERIA.values(), key=lambda r: r["number"]):
        status = "PASS" if row["passed"] else "FAIL"
        terminalreporter.write_line(f"{status} criterion {row['number']:>2}: {row['title']}  [{row['summary']}]")
