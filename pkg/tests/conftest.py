import hypothesis.strategies as st
import pytest
from hypothesis import settings

from treebergman.tree import Params, Vertex

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def vertices(draw, q=2, anchors=(-4, 4), max_len=5):
    anchor = draw(st.integers(*anchors))
    n = draw(st.integers(0, max_len))
    if n == 0:
        return Vertex(anchor)
    head = draw(st.integers(1, q - 1))
    tail = draw(st.lists(st.integers(0, q - 1), min_size=n - 1, max_size=n - 1))
    return Vertex(anchor, (head, *tail))


@pytest.fixture
def params():
    return Params()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
