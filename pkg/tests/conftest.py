import pytest

from spsubgraphs.verify import Context

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def ctx():
    return Context()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
