import math

import numpy as np
import pytest

from ellipsoid_geom import make_ellipsoid

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_ellipsoid(rng, lo=1e-3):
    """Two log-uniform axis ratios in [lo, 1] below a log-uniform a in [0.5, 2]."""
    a = math.exp(rng.uniform(math.log(0.5), math.log(2.0)))
    r = np.sort(np.exp(rng.uniform(math.log(lo), 0.0, size=2)))[::-1]
    return make_ellipsoid(a, a * r[0], a * r[1])


@pytest.fixture
def rng():
    return np.random.default_rng(20041)
