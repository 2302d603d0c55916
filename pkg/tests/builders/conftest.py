import pytest

from magsteklov import exc
from magsteklov.engines import ModeSolver


class FailingSolver(ModeSolver):
    """Solver whose k = 2 modes never converge."""

    def steklov_value(self, params):
        if params.k_power == 2:
            raise exc.NonConvergence("no tail", k=2)
        return float(params.k_power)

    def extension(self, params):
        raise NotImplementedError()


@pytest.fixture
def failing_solver():
    return FailingSolver()
