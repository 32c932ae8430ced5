import pytest

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    num = getattr(item.function, "criterion", None)
    if num is None or rep.when not in ("setup", "call"):
        return
    if rep.failed or rep.when == "call":
        line = str(rep.longrepr.reprcrash.message).splitlines()[0] if rep.failed else ""
        _criteria[num] = (item.function.criterion_title, rep.outcome, line)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, outcome, why = _criteria[num]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        tail = f"  ({why})" if why else ""
        terminalreporter.write_line(f"criterion {num}: {verdict}  {title}{tail}")
