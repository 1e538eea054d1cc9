import pytest

_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n, title = mark.args
    prev = _RESULTS.get(n, ("PASS", title))[0]
    status = "PASS" if rep.passed and prev == "PASS" else "FAIL"
    _RESULTS[n] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status, title = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
