import pytest

_criteria: dict[int, tuple[str, list[str]]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    number, text = marker.args
    _, results = _criteria.setdefault(number, (text, []))
    results.append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, results = _criteria[number]
        status = "PASS" if results and all(r == "passed" for r in results) else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {text}")
