import pytest

from mpgsd import ProblemGraph

# G1: supply s0=+5; demands d1=-3, d2=-2, d3=-4
G1_VALUES = [5, -3, -2, -4]
G1_EDGES = [(0, 1), (0, 2), (1, 3)]
# T1: supply s0=+7; demands d1=-3, d2=-2, d3=-5
T1_VALUES = [7, -3, -2, -5]
T1_EDGES = [(0, 1), (0, 3), (1, 2)]
# two-supply chain s0 - d1 - d2 - s1
CHAIN_VALUES = [3, -3, -2, 2]
CHAIN_EDGES = [(0, 1), (1, 2), (2, 3)]


@pytest.fixture
def g1():
    return ProblemGraph(G1_VALUES, G1_EDGES)


@pytest.fixture
def t1():
    return ProblemGraph(T1_VALUES, T1_EDGES)


@pytest.fixture
def chain():
    return ProblemGraph(CHAIN_VALUES, CHAIN_EDGES)


_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_report():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
