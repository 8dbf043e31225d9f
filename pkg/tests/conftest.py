import math

import numpy as np
import pytest

from machlab.spectral import Grid


BOX = 16.0 * math.pi


@pytest.fixture
def grid64():
    return Grid(64, BOX)


@pytest.fixture
def grid32():
    return Grid(32, BOX)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
