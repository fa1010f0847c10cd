import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    prev = _results.get(num, (title, "PASS"))
    if rep.failed or (rep.when == "call" and rep.skipped):
        _results[num] = (title, "FAIL" if rep.failed else "SKIP")
    elif rep.when == "call" and prev[1] == "PASS":
        _results[num] = (title, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        title, status = _results[num]
        terminalreporter.write_line(f"criterion {num:2d} {status}: {title}")
