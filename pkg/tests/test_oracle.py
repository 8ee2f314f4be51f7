import itertools

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from hnnsched.core import ProblemInstance, Schedule, total_weighted_tardiness, validate
from hnnsched.oracle import (
    MAX_HORIZON,
    OracleLimitError,
    default_horizon,
    lower_bound_feasibility,
    solve_exact,
)

from .strategies import instances


def brute_force(instance, length):
    """Minimum TWT over every feasible N x length binary matrix."""
    n = instance.n_jobs
    best = float("inf")
    rows_per_job = []
    for x in instance.sizes:
        rows = [r for r in itertools.product((0, 1), repeat=length) if sum(r) == x]
        rows_per_job.append(rows)
    for combo in itertools.product(*rows_per_job):
        mat = np.array(combo, dtype=np.uint8).reshape(n, length)
        if (mat.sum(axis=0) <= instance.capacity).all():
            best = min(best, total_weighted_tardiness(instance, Schedule(mat)))
    return best


def test_second_worked_example(second_instance):
    res = solve_exact(second_instance)
    assert res.optimum_twt == 1
    assert validate(second_instance, res.schedule).error_count == 0
    assert total_weighted_tardiness(second_instance, res.schedule) == 1
    assert brute_force(second_instance, 4) == 1


def test_feasible_instance_has_zero_optimum():
    i = ProblemInstance((2, 1, 3), (3, 2, 4), (5, 1, 2), 3)
    assert solve_exact(i).optimum_twt == 0


def test_forced_single_job():
    assert solve_exact(ProblemInstance((3,), (1,), (2,), 1)).optimum_twt == 4


def test_guard_rails():
    with pytest.raises(OracleLimitError):
        solve_exact(ProblemInstance((1,) * 7, (7,) * 7, (1,) * 7, 7))
    with pytest.raises(OracleLimitError):
        solve_exact(ProblemInstance((2,), (13,), (1,), 1))
    with pytest.raises(OracleLimitError):
        solve_exact(ProblemInstance((3, 3), (1, 1), (1, 1), 1), horizon=5)
    assert default_horizon(ProblemInstance((2, 3, 2), (3, 3, 3), (3, 2, 1), 2)) == 7


def test_feasibility_examples(second_instance):
    assert lower_bound_feasibility(ProblemInstance((2, 1), (3, 2), (1, 1), 2))
    assert not lower_bound_feasibility(second_instance)
    assert not lower_bound_feasibility(ProblemInstance((4,), (3,), (1,), 1))


@settings(max_examples=60)
@given(instances(max_jobs=3, max_size=3, max_deadline=4, max_capacity=2))
def test_matches_brute_force(i):
    length = 4
    assume(sum(i.sizes) <= i.capacity * length)
    assert solve_exact(i, horizon=length).optimum_twt == brute_force(i, length)


@settings(max_examples=60)
@given(instances(max_jobs=4, max_size=3, max_deadline=5, max_capacity=2))
def test_oracle_schedule_and_horizon_monotonicity(i):
    h = default_horizon(i)
    res = solve_exact(i, h)
    assert validate(i, res.schedule).error_count == 0
    assert total_weighted_tardiness(i, res.schedule) == res.optimum_twt
    if h < MAX_HORIZON:
        assert solve_exact(i, MAX_HORIZON).optimum_twt <= res.optimum_twt
    feasible = lower_bound_feasibility(i)
    if feasible:
        assert res.optimum_twt == 0
    elif min(i.weights) > 0:
        assert res.optimum_twt > 0
