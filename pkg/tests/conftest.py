import pytest

from eulersums import PrecisionConfig


@pytest.fixture(scope="session")
def cfg():
    """Default working configuration shared across the suite."""
    return PrecisionConfig()


@pytest.fixture(scope="session")
def cfg15():
    return PrecisionConfig(digits=15)
