"""Shared test fixtures."""

import pytest

from app.models import BesselParams, DiskSamplingPlan, LommelParams


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-resolution runs (deselect with -m 'not slow')")


@pytest.fixture
def coarse_plan():
    """Default radii with the minimum circle resolution, for fast verdicts."""
    return DiskSamplingPlan(points_per_circle=64)


@pytest.fixture
def sinc_params():
    """u_{1/2,1,1}(z) = sin(sqrt z)/sqrt z."""
    return BesselParams(p=0.5, b=1, c=1)


@pytest.fixture
def sinhc_params():
    return BesselParams(p=0.5, b=1, c=-1)


@pytest.fixture
def lommel_8_3():
    """The (mu, p) = (8, 3) Lommel point: K = 4, F = 7."""
    return LommelParams(mu=8, p=3)
