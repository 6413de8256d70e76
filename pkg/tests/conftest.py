import pytest
from hypothesis import HealthCheck, settings

from fpfunctors.modules import FpModule
from fpfunctors.ring import Mat, RingSpec

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

Z = RingSpec.integers()
Z8 = RingSpec.zmod(8)


def cyc(ring, d):
    return FpModule.cyclic(ring, d)


def mat(ring, rows, ncols=None):
    return Mat.from_rows(ring, rows, ncols=ncols)


@pytest.fixture
def ZZ():
    return Z


@pytest.fixture
def Z8R():
    return Z8
