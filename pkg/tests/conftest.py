import numpy as np
import pytest

from genhermite.config import load_profile
from genhermite.functions import JetValue
from genhermite.grid import Grid


@pytest.fixture(scope="session")
def default_profile():
    return load_profile("default")


@pytest.fixture
def grid():
    return Grid()


@pytest.fixture
def partner_grid():
    return Grid(-5.0, 5.0, 1001)


def smooth_jet(x, shift=0.3):
    """f = e^{-(x-s)^2/2} cos x with its exact first and second derivatives."""
    u = x - shift
    g = np.exp(-0.5 * u * u)
    g1 = -u * g
    g2 = (u * u - 1.0) * g
    c, s = np.cos(x), np.sin(x)
    return JetValue(g * c, g1 * c - g * s, g2 * c - 2.0 * g1 * s - g * c)


@pytest.fixture
def smooth():
    return smooth_jet
