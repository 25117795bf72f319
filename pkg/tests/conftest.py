import pytest
from hypothesis import HealthCheck, settings

from modxl.sweep import Scenario, default_scenario

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def reference() -> Scenario:
    "The default 16x20 half-wavelength scenario used throughout the suite."
    return default_scenario()
