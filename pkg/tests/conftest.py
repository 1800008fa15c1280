import pytest

from palwidth.width import build_length_table
from palwidth.words import GroupSpec

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def tables():
    cache = {}

    def get(n, cls=2):
        key = (n, cls)
        if key not in cache:
            cache[key] = build_length_table(GroupSpec(n, cls, True))
        return cache[key]

    return get


@pytest.fixture
def report():
    def record(criterion, passed, detail=""):
        _ACCEPTANCE.append((criterion, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}")
