import numpy as np
import pytest

from qgft import FiniteAbelianGroup


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def z4():
    return FiniteAbelianGroup((4,))


@pytest.fixture
def z8():
    return FiniteAbelianGroup((8,))


@pytest.fixture
def z3x4():
    return FiniteAbelianGroup((3, 4))
