import pytest

from branchpack import Digraph, Edge, KBranching
from branchpack.generators import counterexample

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def triangle():
    return Digraph(["r", "a", "b"], [Edge("e1", "r", "a"), Edge("e2", "r", "b"),
                                     Edge("e3", "a", "b"), Edge("e4", "b", "a")])


@pytest.fixture
def cx3():
    return counterexample(3)


def edgeless(roots):
    return KBranching.edgeless(roots)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
