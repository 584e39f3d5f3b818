import pytest

# criterion number -> (title, outcome) for the acceptance summary
_CRITERIA: dict[str, tuple[int, str]] = {}
_OUTCOMES: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            _CRITERIA[item.nodeid] = (m.args[0], m.args[1])


def pytest_runtest_logreport(report):
    if report.nodeid not in _CRITERIA:
        return
    if report.when == "call" or report.failed:
        num = _CRITERIA[report.nodeid][0]
        _OUTCOMES.setdefault(num, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    titles = {num: title for num, title in _CRITERIA.values()}
    terminalreporter.section("acceptance criteria")
    for num in sorted(titles):
        res = _OUTCOMES.get(num)
        status = "SKIP" if res is None else ("PASS" if all(res) else "FAIL")
        terminalreporter.write_line(f"[{status}] {num:2d}. {titles[num]}")
