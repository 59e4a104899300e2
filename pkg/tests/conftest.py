import pytest

from ggmgroup.graph_core import Graph

# Named graphs, written with 1-based labels as they appear in the docs.
NAMED = {
    "P3": (3, [(1, 2), (1, 3)]),
    "bull": (5, [(1, 2), (1, 3), (2, 3), (1, 4), (2, 5)]),
    "C4": (4, [(1, 2), (2, 3), (3, 4), (1, 4)]),
    "P4": (4, [(1, 2), (2, 3), (3, 4)]),
    "K3": (3, [(1, 2), (1, 3), (2, 3)]),
    "K4": (4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
    "E3": (3, []),
    "claw": (4, [(1, 2), (1, 3), (1, 4)]),
    "star5": (5, [(1, 2), (1, 3), (1, 4), (1, 5)]),
    "diamond": (4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]),
}


def named(name: str) -> Graph:
    m, edges = NAMED[name]
    return Graph.from_edges(m, edges, one_based=True)


@pytest.fixture
def p3():
    return named("P3")


@pytest.fixture
def bull():
    return named("bull")


@pytest.fixture
def c4():
    return named("C4")


# Collected by test_acceptance and printed once at the end of the run.
ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}: {detail}")
