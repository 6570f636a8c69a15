import sys

import pytest
from hypothesis import HealthCheck, settings

from orbigw.groupchar import build_orbifold

settings.register_profile(
    "orbigw", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("orbigw")


@pytest.fixture(scope="session")
def point():
    """Trivial group acting on C^1."""
    return build_orbifold([], [[]])


@pytest.fixture(scope="session")
def z2_line():
    return build_orbifold([2], [[1]])


@pytest.fixture(scope="session")
def z3_cy3():
    """[C^3/Z_3] with all weights 1."""
    return build_orbifold([3], [[1], [1], [1]])


@pytest.fixture(scope="session")
def klein_cy3():
    """[C^3/(Z_2 x Z_2)] with the standard diagonal action."""
    return build_orbifold([2, 2], [[1, 0], [0, 1], [1, 1]])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
