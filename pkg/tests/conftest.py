import numpy as np
import pytest

from qtfa import Axis, GridSignal2D


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


def random_signal(ax1, ax2, seed):
    gen = np.random.default_rng(seed)
    return GridSignal2D(ax1, ax2, gen.standard_normal((ax1.n, ax2.n, 4)))


@pytest.fixture
def small_axes():
    return Axis.centered(16, 8.0), Axis.centered(16, 8.0)
