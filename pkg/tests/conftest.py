import pytest

_acceptance: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when not in ("setup", "call"):
        return
    number, title = marker.args
    if rep.when == "setup" and rep.passed:
        return
    _acceptance[number] = (title, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, status, secs = _acceptance[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}  ({secs:.2f}s)")
