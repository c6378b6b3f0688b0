"""Collects the outcome of each acceptance criterion and prints one line apiece."""

_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, title = mark.args
    _RESULTS[n] = ("FAIL" if call.excinfo else "PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status, title = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
