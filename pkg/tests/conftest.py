import sys
from pathlib import Path

import pytest

from kegraphs.graph import Graph, disjoint_union, named_graph

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def paw() -> Graph:
    return named_graph("paw")


@pytest.fixture
def bowtie() -> Graph:
    return named_graph("bowtie")


@pytest.fixture
def dumbbell() -> Graph:
    return named_graph("dumbbell")


@pytest.fixture
def domino() -> Graph:
    return named_graph("domino")


@pytest.fixture
def c4() -> Graph:
    return named_graph("c4")


@pytest.fixture
def k3() -> Graph:
    return named_graph("k3")


@pytest.fixture
def paw_k2(paw) -> Graph:
    return disjoint_union(paw, named_graph("k2"))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES):
            terminalreporter.write_line(line)
