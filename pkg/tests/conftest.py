import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def bstar_json() -> dict:
    return json.loads((FIXTURES / "bstar.json").read_text())


@pytest.fixture(scope="session")
def corpus():
    from oracles import graph_corpus

    return graph_corpus()


@pytest.fixture(scope="session")
def all_reports():
    from ixlocal.experiments import enumerate_all_subproblems

    return enumerate_all_subproblems()


_CRITERIA: dict[int, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _CRITERIA[number] = ("PASS" if rep.passed else "FAIL", title, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, title, secs = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}  ({secs:.1f} s)")
