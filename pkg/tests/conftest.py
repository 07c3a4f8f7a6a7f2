import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from gradedaf import Aaf, Params  # noqa: E402
from gradedaf.generate import arg_names  # noqa: E402


@st.composite
def frames(draw, min_size=1, max_size=5):
    k = draw(st.integers(min_size, max_size))
    names = arg_names(k)
    pairs = [(x, y) for x in names for y in names]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Aaf.build(names, chosen)


@st.composite
def frame_and_set(draw, max_size=5):
    F = draw(frames(max_size=max_size))
    E = draw(st.integers(0, F.full))
    return F, E


grade = st.integers(1, 3)
params = st.builds(Params, grade, grade, grade, grade)


@pytest.fixture
def chain():
    return Aaf.build("ab", [("a", "b")])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
