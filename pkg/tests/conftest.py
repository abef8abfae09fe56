from pathlib import Path

import pytest

from rankcolor.coloring import read_coloring

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def fig1_left():
    return read_coloring(FIXTURES / "fig1_left.json")[0]


@pytest.fixture
def fig1_right():
    return read_coloring(FIXTURES / "fig1_right.json")[0]


# -- one pass/fail line per acceptance criterion ------------------------------

_criteria: dict[str, tuple[str, str]] = {}


@pytest.fixture
def criterion_note(record_property):
    """Attach a short result note to the criterion's summary line."""
    return lambda text: record_property("criterion_note", text)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        prev = _criteria.get(label, ("PASS", ""))[0]
        if prev != "PASS":
            status = prev
        note = dict(report.user_properties).get("criterion_note")
        _criteria[label] = (status, item.name + (f"; {note}" if note else ""))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0])):
        status, name = _criteria[label]
        terminalreporter.write_line(f"{status}  criterion {label}  ({name})")
