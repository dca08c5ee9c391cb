"""
Shared fixtures for the test suite
"""
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from algebra.coeffring import Ring
from algebra.sampling import make_rng

DATA_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "data"

settings.register_profile(
    "plrk",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("plrk")


def data_file(name: str) -> Path:
    return DATA_DIR / f"{name}.json"


@pytest.fixture
def rng():
    return make_rng(20240601)


@pytest.fixture
def ring2():
    return Ring(("x1", "x2"))


@pytest.fixture
def ring3():
    return Ring(("x1", "x2", "x3"))
