import pytest

from sklyanin.center import compute_center
from sklyanin.params import SklyaninParams


@pytest.fixture(scope="session")
def cp2():
    return compute_center(SklyaninParams(1, 1, 2))


@pytest.fixture(scope="session")
def cp6():
    return compute_center(SklyaninParams(1, -1, -1))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
