from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hnnsched.baselines import (
    JobOrdering,
    list_schedule,
    order_edd,
    order_lwpf,
    order_random,
    order_wspt,
    run_baseline,
    schedule_lbs,
    schedule_for,
)
from hnnsched.core import ProblemInstance, total_weighted_tardiness, validate

from .strategies import instances


def inst(sizes=None, deadlines=None, weights=None, cap=1, n=None):
    n = n or len(sizes or deadlines or weights)
    return ProblemInstance(
        sizes or (1,) * n, deadlines or (1,) * n, weights or (1,) * n, cap
    )


def one_based(ordering):
    return tuple(i + 1 for i in ordering.permutation)


def test_edd_examples():
    assert one_based(order_edd(inst(deadlines=(3, 1, 2)))) == (2, 3, 1)
    assert one_based(order_edd(inst(deadlines=(4, 4, 4)))) == (1, 2, 3)
    assert one_based(order_edd(inst(deadlines=(1, 1, 2)))) == (1, 2, 3)


def test_wspt_examples():
    assert one_based(order_wspt(inst(sizes=(2, 3), weights=(2, 1)))) == (1, 2)
    assert one_based(order_wspt(inst(sizes=(2, 4, 1), weights=(2, 4, 1)))) == (1, 2, 3)
    assert one_based(order_wspt(inst(sizes=(1, 1, 5), weights=(0, 1, 1)))) == (2, 3, 1)


def test_lwpf_examples():
    assert one_based(order_lwpf(inst(weights=(1, 5, 3)))) == (2, 3, 1)
    assert one_based(order_lwpf(inst(weights=(2, 2, 2)))) == (1, 2, 3)
    assert one_based(order_lwpf(inst(weights=(7,)))) == (1,)


def test_random_examples():
    i3 = inst(n=3)
    a = order_random(i3, np.random.default_rng(8))
    b = order_random(i3, np.random.default_rng(8))
    assert a == b
    assert one_based(order_random(inst(n=1), np.random.default_rng(0))) == (1,)
    rng = np.random.default_rng(2024)
    counts = Counter(order_random(i3, rng).permutation for _ in range(10_000))
    assert len(counts) == 6
    for c in counts.values():
        assert abs(c / 10_000 - 1 / 6) <= 0.02


def test_list_schedule_examples():
    i = ProblemInstance((2, 3, 1), (3, 3, 3), (1, 1, 1), 2)
    s = list_schedule(i, JobOrdering((0, 1, 2), "edd"))
    assert s.matrix.tolist() == [[1, 1, 0], [1, 1, 1], [0, 0, 1]]
    wide = ProblemInstance((2, 3, 1), (1, 5, 1), (2, 1, 4), 3)
    s = list_schedule(wide, order_lwpf(wide))
    assert [s.matrix[k, : x].all() for k, x in enumerate(wide.sizes)] == [True] * 3
    assert total_weighted_tardiness(wide, s) == 2 * 1 + 0 + 0
    one = ProblemInstance((4,), (2,), (1,), 2)
    assert list_schedule(one, order_edd(one)).matrix.tolist() == [[1, 1, 1, 1]]


def test_lbs_examples():
    s = schedule_lbs(ProblemInstance((1, 1), (2, 2), (1, 1), 1))
    assert s.matrix.tolist() == [[0, 1], [1, 0]]
    exact = ProblemInstance((2, 3, 1), (2, 3, 1), (1, 1, 1), 3)
    s = schedule_lbs(exact)
    assert s.matrix.tolist() == [[1, 1, 0], [1, 1, 1], [1, 0, 0]]
    assert total_weighted_tardiness(exact, s) == 0


def test_lbs_overflow_goes_past_latest_deadline():
    over = ProblemInstance((3, 3), (2, 2), (1, 2), 1)
    s = schedule_lbs(over)
    assert validate(over, s).error_count == 0
    assert s.length > 2
    assert s.matrix[:, 2:].sum() == 6 - 2


def test_run_baseline_examples(second_instance):
    seeds = [np.random.default_rng(5), np.random.default_rng(5)]
    _, once = run_baseline(second_instance, "random", seeds[0], 1)
    _, many = run_baseline(second_instance, "random", seeds[1], 1000)
    assert many <= once
    a = run_baseline(second_instance, "edd", None, 5)
    b = run_baseline(second_instance, "edd", None, 1)
    assert a[0] == b[0] and a[1] == b[1]
    sched, t = run_baseline(second_instance, "lwpf")
    assert validate(second_instance, sched).error_count == 0
    assert t >= 1


def test_unknown_rule():
    with pytest.raises(ValueError):
        schedule_for(inst(n=2), "spt")
    with pytest.raises(ValueError):
        schedule_for(inst(n=2), "random")


@given(instances(max_jobs=6, max_size=6, max_deadline=10), st.integers(0, 2**32))
def test_every_baseline_is_feasible(i, seed):
    for rule in ("edd", "wspt", "lwpf", "lbs", "random"):
        s = schedule_for(i, rule, np.random.default_rng(seed))
        diag = validate(i, s)
        assert diag.error_count == 0, rule
        assert s.matrix.sum(axis=1).tolist() == list(i.sizes)


@given(instances(max_jobs=6, int_weights=False), st.floats(0.01, 100))
def test_weight_scaling_keeps_orderings(i, factor):
    scaled = ProblemInstance(i.sizes, i.deadlines, tuple(w * factor for w in i.weights), i.capacity)
    assert order_lwpf(scaled).permutation == order_lwpf(i).permutation
    if all(w > 0 for w in i.weights):
        ratios = [x / w for x, w in zip(i.sizes, i.weights)]
        scaled_ratios = [x / w for x, w in zip(scaled.sizes, scaled.weights)]
        # float rounding can merge or split exact ties; compare only when both keep them
        if len(set(ratios)) == len(set(scaled_ratios)) == len(ratios):
            assert order_wspt(scaled).permutation == order_wspt(i).permutation


@given(instances(max_jobs=5, max_size=5, max_deadline=8), st.integers(0, 2**32))
def test_no_contention_all_orderings_agree(i, seed):
    roomy = ProblemInstance(i.sizes, i.deadlines, i.weights, i.n_jobs)
    expected = sum(w * max(0, x - k) for x, k, w in zip(i.sizes, i.deadlines, i.weights))
    for rule in ("edd", "wspt", "lwpf", "random"):
        s = schedule_for(roomy, rule, np.random.default_rng(seed))
        assert total_weighted_tardiness(roomy, s) == pytest.approx(expected)
