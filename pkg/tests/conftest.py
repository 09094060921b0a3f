import pytest

from bourbaki.fixtures import ANTICHAIN2, CHAIN3, DIAMOND, VEE
from bourbaki.maps import SelfMap

_criteria: dict[str, tuple[int, str]] = {}
_outcomes: dict[int, list[bool]] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker:
            _criteria[item.nodeid] = marker.args


def pytest_runtest_logreport(report):
    if report.nodeid in _criteria and (report.when == "call" or report.failed):
        number, _ = _criteria[report.nodeid]
        _outcomes.setdefault(number, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    titles = {num: title for num, title in _criteria.values()}
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        status = "PASS" if all(_outcomes[number]) else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {titles[number]}")


@pytest.fixture
def chain3():
    return CHAIN3


@pytest.fixture
def diamond():
    return DIAMOND


@pytest.fixture
def vee():
    return VEE


@pytest.fixture
def antichain2():
    return ANTICHAIN2


@pytest.fixture
def diamond_climb(diamond):
    return SelfMap.from_table(diamond, {"bot": "l", "l": "top", "r": "top", "top": "top"})


@pytest.fixture
def chain3_climb(chain3):
    return SelfMap.from_table(chain3, {"a": "b", "b": "c", "c": "c"})
