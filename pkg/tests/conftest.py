import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        detail = ""
        if rep.failed:
            detail = str(rep.longrepr.reprcrash.message).splitlines()[0] if hasattr(rep.longrepr, "reprcrash") else "failed"
        _RESULTS[mark.args[0]] = (mark.args[1], rep.passed, detail, getattr(rep, "duration", 0.0))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        title, ok, detail, dur = _RESULTS[num]
        line = f"{'PASS' if ok else 'FAIL'} criterion {num:2d}: {title} ({dur:.1f}s)"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
