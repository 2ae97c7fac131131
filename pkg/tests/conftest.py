import pytest
from hypothesis import settings

from strobj.context import Ctx
from strobj.words import Alphabet

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@pytest.fixture
def ab():
    return Ctx(alphabet=Alphabet("ab"), budget=20_000)


@pytest.fixture
def abc():
    return Ctx(alphabet=Alphabet("abc"), budget=20_000)


@pytest.fixture
def abcd():
    return Ctx(alphabet=Alphabet("abcd"), budget=20_000)


# ---------------------------------------------------------------- acceptance summary

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n, title = mark.args
    ok = rep.passed or (hasattr(rep, "wasxfail") and rep.skipped)
    if rep.when == "call" or not ok:
        prev = _CRITERIA.get(n, (title, True))
        _CRITERIA[n] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        title, ok = _CRITERIA[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n:>2}: {title}")
