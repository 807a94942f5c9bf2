import pytest
from hypothesis import HealthCheck, settings

from stepwave.units import EV_NM_FS, NATURAL, SourceScenario

settings.register_profile(
    "suite",
    max_examples=80,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.filter_too_much],
)
settings.load_profile("suite")


@pytest.fixture
def below_natural() -> SourceScenario:
    """q0 = 1, v = 1, x_p = 1, X0 = 2 exactly."""
    return SourceScenario(units=NATURAL, V0=1.0, E0=0.5)


@pytest.fixture
def above_natural() -> SourceScenario:
    return SourceScenario(units=NATURAL, V0=1.0, E0=2.0)


@pytest.fixture
def below_ev() -> SourceScenario:
    return SourceScenario(units=EV_NM_FS, V0=1.0, E0=0.5)


@pytest.fixture
def above_ev() -> SourceScenario:
    return SourceScenario(units=EV_NM_FS, V0=1.0, E0=2.0)
