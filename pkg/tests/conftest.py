import pytest

from endotriv.groups import build_group

P_GROUPS = [("C2", 2), ("C4", 2), ("V4", 2), ("D8", 2), ("Q8", 2), ("C3", 3), ("C9", 3), ("C3xC3", 3)]


@pytest.fixture(scope="session")
def groups():
    """One shared instance per catalog group, so cached data is reused across tests."""
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_group(name)
        return cache[name]

    return get


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
