import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")
_outcomes: dict[int, bool] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    # a skip counts against the criterion; only a passing call counts for it
    if report.failed or report.skipped:
        _outcomes[n] = False
    elif report.when == "call":
        _outcomes.setdefault(n, True)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if _outcomes[n] else 'FAIL'}")
