"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

_criteria = {}  # nodeid -> (number, label)
_results = {}  # number -> list of outcomes


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, label): acceptance criterion check")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark is not None:
            _criteria[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _criteria:
        return
    number, _ = _criteria[report.nodeid]
    if report.when == "call" or report.failed:
        _results.setdefault(number, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, label in sorted(set(_criteria.values())):
        outcomes = _results.get(number)
        if not outcomes:
            status = "NOT RUN"
        elif all(o == "passed" for o in outcomes):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"{status:7} {number:2d}. {label}")
