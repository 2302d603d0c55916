import pytest

from magsteklov.engines import OracleModeSolver, StandardModeSolver
from magsteklov.models import RadialODEParams, Sign


@pytest.fixture
def solver():
    return StandardModeSolver()


@pytest.fixture
def oracle():
    return OracleModeSolver()


@pytest.fixture
def disk_mode():
    """Factory for disk mode parameters."""
    def make(k, sign, t):
        return RadialODEParams.disk(k, Sign(sign), t)
    return make
