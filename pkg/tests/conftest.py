import pytest

from emotrack.store import MemoryStore, SqliteStore

# ---------------------------------------------------------------------------
# acceptance reporting: tests marked with @pytest.mark.criterion("...") get
# one PASS/FAIL line each in the terminal summary
# ---------------------------------------------------------------------------

_criteria: dict[str, str] = {}  # nodeid -> label
_outcomes: dict[str, str] = {}  # nodeid -> passed/failed/skipped


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(label): names the acceptance check a test implements"
    )


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            _criteria[item.nodeid] = marker.args[0]


def pytest_runtest_logreport(report):
    if report.nodeid not in _criteria:
        return
    if report.when == "call" or report.outcome != "passed":
        previous = _outcomes.get(report.nodeid)
        if previous != "failed":
            _outcomes[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance")
    for nodeid, label in _criteria.items():
        outcome = _outcomes.get(nodeid, "skipped")
        word = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"ACCEPTANCE {word} - {label}")


# ---------------------------------------------------------------------------
# shared fixtures
# ---------------------------------------------------------------------------


@pytest.fixture(params=["memory", "sqlite"])
def store(request, tmp_path):
    if request.param == "memory":
        return MemoryStore()
    return SqliteStore(str(tmp_path / "reactions.db"))
