from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from mixedmoore.constructions import almost_moore_10, excess_one_12
from mixedmoore.core import MixedGraph


@pytest.fixture
def fig1() -> MixedGraph:
    return almost_moore_10()


@pytest.fixture
def fig6() -> MixedGraph:
    return excess_one_12()


def random_permutation(n: int, rng: random.Random) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


@st.composite
def mixed_graphs(draw, max_n: int = 7, digons: bool = True):
    """Arbitrary mixed graph: each unordered pair is empty, an edge, one arc, or (optionally) two arcs."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    states = 5 if digons else 4
    edges, arcs = [], []
    for i in range(n):
        for j in range(i + 1, n):
            s = draw(st.integers(min_value=0, max_value=states - 1))
            if s == 1:
                edges.append((i, j))
            elif s == 2:
                arcs.append((i, j))
            elif s == 3:
                arcs.append((j, i))
            elif s == 4:
                arcs += [(i, j), (j, i)]
    return MixedGraph(n, edges, arcs)


# acceptance criteria register their verdicts here; printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[num])
