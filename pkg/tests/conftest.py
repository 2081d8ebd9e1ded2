import pytest

_criteria: dict[int, tuple[str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


def pytest_runtest_logreport(report):
    mark = getattr(report, "criterion", None)
    if mark is None:
        return
    n, title = mark
    _, outcomes = _criteria.setdefault(n, (title, []))
    if report.when == "call" or report.outcome != "passed":
        outcomes.append(report.outcome)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        title, outcomes = _criteria[n]
        ok = outcomes and all(o == "passed" for o in outcomes)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
