from pathlib import Path

import pytest
from hypothesis import strategies as st

from inforest import build_digraph
from inforest.generators import ordered_pairs

FIXTURES = Path(__file__).parent / "fixtures"


@st.composite
def digraphs(draw, min_n=1, max_n=5, weighted=True):
    n = draw(st.integers(min_n, max_n))
    pairs = draw(st.lists(st.sampled_from(ordered_pairs(n)), unique=True)) if n > 1 else []
    if weighted:
        weights = st.floats(0.1, 2.0, allow_nan=False, allow_infinity=False)
        arcs = [(s, t, draw(weights)) for s, t in pairs]
    else:
        arcs = [(s, t, 1.0) for s, t in pairs]
    return build_digraph(n, arcs)


@pytest.fixture
def path3():
    return build_digraph(3, [(0, 1, 1.0), (1, 2, 1.0)])


@pytest.fixture
def two_cycle():
    return build_digraph(2, [(0, 1, 1.0), (1, 0, 1.0)])


@pytest.fixture
def fixtures_dir():
    return FIXTURES


ACCEPTANCE_LINES = {}


def record_acceptance(number, ok, detail):
    ACCEPTANCE_LINES[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
