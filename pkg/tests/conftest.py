import random

import pytest
from hypothesis import strategies as st

from ybserre.scalars import Scalar

small_ints = st.integers(min_value=-4, max_value=4)
polys = st.lists(small_ints, min_size=0, max_size=4).map(tuple)
nonzero_polys = polys.filter(lambda p: any(p))


@st.composite
def scalars(draw, nonzero=False):
    num = draw(nonzero_polys if nonzero else polys)
    den = draw(nonzero_polys)
    return Scalar(num, den)


def random_scalar(rng: random.Random, nonzero: bool = True) -> Scalar:
    """Small random rational function in q, nonzero by default."""
    while True:
        num = tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 3)))
        den = tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 3)))
        if any(den) and (any(num) or not nonzero):
            return Scalar(num, den)


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, shown in the terminal summary
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0][2:])):
            terminalreporter.write_line(line)
