import pytest

from rabkit.building import Building
from rabkit.graph_product import running_example


@pytest.fixture(scope="session")
def g0():
    return running_example()


@pytest.fixture(scope="session")
def B0(g0):
    return Building(g0)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
