import pytest

from kgsheets.parser import parse_graph
from kgsheets.sample import load_sample, sample_text

from helpers import MINI_TTL


@pytest.fixture(scope="session")
def sample_graph():
    return load_sample()


@pytest.fixture(scope="session")
def sample_ttl():
    return sample_text()


@pytest.fixture
def mini_graph():
    return parse_graph(MINI_TTL)


# -- acceptance verdict lines

_VERDICTS: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed):
        return
    number, title = mark.args
    ok = _VERDICTS.get(number, (title, True))[1] and not rep.failed
    _VERDICTS[number] = (title, ok)


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        title, ok = _VERDICTS[number]
        terminalreporter.write_line(f"criterion {number} ({title}): {'PASS' if ok else 'FAIL'}")
