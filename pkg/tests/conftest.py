import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from tmtree import ExplicitGraph, ScalarField
from tmtree.tmt import BACKENDS

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return request.param


@pytest.fixture
def p3():
    """Path 0-1-2 with f = [1, 3, 2]: two minima joined at vertex 1."""
    return ScalarField([1.0, 3.0, 2.0]), ExplicitGraph(3, [(0, 1), (1, 2)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in mod.REPORT:
            terminalreporter.write_line(line)
