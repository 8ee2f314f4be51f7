import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from hnnsched.core import ProblemInstance, Schedule

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile(
    "fast", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("default", deadline=None)
settings.load_profile("default")

# first worked example: three jobs on two machines, every deadline met
FIRST_C = [[1, 0, 1], [1, 1, 1], [0, 1, 0]]
# second worked example: one more unit for job 3 forces one unit of tardiness
SECOND_C = [[1, 0, 1, 0], [1, 1, 1, 0], [0, 1, 0, 1]]


@pytest.fixture
def first_instance():
    return ProblemInstance((2, 3, 1), (3, 3, 3), (1, 1, 1), 2)


@pytest.fixture
def second_instance():
    return ProblemInstance((2, 3, 2), (3, 3, 3), (3, 2, 1), 2)


@pytest.fixture
def first_schedule():
    return Schedule(np.array(FIRST_C))


@pytest.fixture
def second_schedule():
    return Schedule(np.array(SECOND_C))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.VERDICTS):
            terminalreporter.write_line(line)
