import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hedgehog_sections.polygon import from_vertices
from hedgehog_sections.support_fn import SupportFunction

settings.register_profile(
    "default", max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", max_examples=300, deadline=None, derandomize=True)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def disk():
    return SupportFunction.constant(0.77)


@pytest.fixture
def sin4():
    return SupportFunction.from_coefficients(0.0, (), (0, 0, 0, 1.0))


@pytest.fixture
def trefoil():
    return SupportFunction.from_coefficients(1.0, (), (0, 0, 2.0))


@pytest.fixture
def square():
    return from_vertices([(-1, -1), (1, -1), (1, 1), (-1, 1)])


@pytest.fixture
def figure_q():
    return from_vertices([(1, 4), (3, 2), (3, -4), (-3, -4), (-3, 4)])


def angle_gap(a, b):
    g = abs(a - b) % (2 * math.pi)
    return min(g, 2 * math.pi - g)
