import pytest

from varnamap.mlanguage import load_bundled

_criteria: dict[int, list[tuple[str, str]]] = {}
_notes: list[str] = []


@pytest.fixture(scope="session")
def note():
    """Append a line to the report printed after the run."""
    return _notes.append


@pytest.fixture(scope="session")
def bundled():
    return load_bundled()


@pytest.fixture(scope="session")
def pmap(bundled):
    return bundled[0]


@pytest.fixture(scope="session")
def groups(bundled):
    return {g.theme_id: g for g in bundled[1]}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _criteria.setdefault(marker.args[0], []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        results = _criteria[number]
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {number:>2}: {status} ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
    for line in _notes:
        terminalreporter.write_line(f"note: {line}")
