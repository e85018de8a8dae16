import numpy as np
import pytest

from fracgreen import Grid1D, RieszFellerTerm, SpaceOperator


@pytest.fixture
def laplacian():
    return SpaceOperator([RieszFellerTerm(1.0, 2.0, 0.0)])


@pytest.fixture
def small_grid():
    return Grid1D(-20.0, 20.0, 256)


def gaussian(x, c=0.0, w=1.0):
    return np.exp(-(((x - c) / w) ** 2))
