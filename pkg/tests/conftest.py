import math

import pytest

from twotone import GaussianWindow, TwoHarmonicModel


@pytest.fixture
def window():
    return GaussianWindow(sigma=math.sqrt(2.0))


@pytest.fixture
def model_a13():
    return TwoHarmonicModel(xi0=1.0, delta=0.3, a=1.3)


@pytest.fixture
def model_balanced():
    return TwoHarmonicModel(xi0=1.0, delta=0.3, a=1.0)
