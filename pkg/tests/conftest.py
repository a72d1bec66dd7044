import pytest

_VERDICTS: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        # parametrized criteria pass only if every case passes
        failed = not report.passed or _VERDICTS.get(number, ("PASS",))[0] == "FAIL"
        _VERDICTS[number] = ("FAIL" if failed else "PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_VERDICTS):
        verdict, title = _VERDICTS[n]
        terminalreporter.write_line(f"{verdict}  criterion {n:2d}: {title}")
    passed = sum(v == "PASS" for v, _ in _VERDICTS.values())
    terminalreporter.write_line(f"{passed}/{len(_VERDICTS)} criteria passed")
