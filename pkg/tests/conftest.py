import itertools
import random
import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from lipfree.metric import MetricSpace


def shortest_path_metric(weights):
    """Floyd-Warshall closure of a symmetric positive weight matrix."""
    n = len(weights)
    d = [list(row) for row in weights]
    for k, i, j in itertools.product(range(n), repeat=3):
        if d[i][k] + d[k][j] < d[i][j]:
            d[i][j] = d[i][k] + d[k][j]
    return d


def random_space(rng, n_min=2, n_max=8, base=None):
    n = rng.randint(n_min, n_max)
    w = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w[i][j] = w[j][i] = Fraction(rng.randint(1, 12), rng.randint(1, 3))
    d = shortest_path_metric(w)
    labels = [f"p{i}" for i in range(n)]
    return MetricSpace(tuple(labels), rng.randrange(n) if base is None else base, tuple(map(tuple, d)))


def random_values(rng, space, lo=-6, hi=6):
    vals = [Fraction(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(space.n)]
    vals[space.base] = Fraction(0)
    return vals


@st.composite
def spaces(draw, n_min=2, n_max=6):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_space(random.Random(seed), n_min, n_max)


@st.composite
def space_and_values(draw, n_min=2, n_max=6):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    sp = random_space(rng, n_min, n_max)
    return sp, random_values(rng, sp)


@pytest.fixture
def rng():
    return random.Random(12345)


def two_point(d=1):
    return MetricSpace(("0", "x"), 0, ((0, d), (d, 0)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines.values():
            terminalreporter.write_line(line)
