import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hnnsched.core import (
    FormatError,
    ProblemInstance,
    Schedule,
    finish_time,
    flatten,
    load_instance,
    load_schedule,
    schedule_length,
    total_weighted_tardiness,
    unflatten,
    validate,
)

from .strategies import instances, schedules


def test_finish_time_examples(first_schedule, second_schedule):
    assert finish_time(first_schedule, 0) == 3
    assert finish_time(second_schedule, 2) == 4
    assert finish_time(Schedule(np.array([[0, 0, 0], [1, 0, 0]])), 0) == 0


def test_twt_examples(first_instance, first_schedule, second_instance, second_schedule):
    assert total_weighted_tardiness(first_instance, first_schedule) == 0
    heavy = ProblemInstance((2, 3, 1), (3, 3, 3), (7, 0.5, 9), 2)
    assert total_weighted_tardiness(heavy, first_schedule) == 0
    # job 3 (w=1, K=3) finishes in slot 4
    assert total_weighted_tardiness(second_instance, second_schedule) == 1
    single = ProblemInstance((2,), (1,), (5,), 1)
    assert total_weighted_tardiness(single, Schedule(np.array([[1, 1]]))) == 5


def test_validate_examples(first_schedule):
    ok = validate(ProblemInstance((2, 3, 1), (3, 3, 3), (1, 1, 1), 2), first_schedule)
    assert ok.error_count == 0 and ok.valid
    short = validate(ProblemInstance((3, 3, 1), (3, 3, 3), (1, 1, 1), 2), first_schedule)
    assert short.error_count == 1
    assert short.row_errors == (-1, 0, 0)
    over = validate(ProblemInstance((1, 1), (1, 1), (1, 1), 1), Schedule(np.ones((2, 1))))
    assert over.error_count >= 1
    assert over.column_overloads == (1,)


def test_flatten_examples(first_schedule):
    assert flatten(first_schedule).tolist() == [1, 0, 1, 1, 1, 1, 0, 1, 0]
    assert not flatten(Schedule(np.zeros((2, 3)))).any()
    assert flatten(Schedule(np.array([[1]]))).tolist() == [1]


@pytest.mark.parametrize(
    "sizes, deadlines, cap, expected",
    [
        ((2, 3, 1), (3, 3, 3), 2, (3, 3, 1)),
        ((2, 3, 2), (3, 3, 3), 2, (4, 4, 1)),
        ((5,), (5,), 1, (5, 5, 1)),
    ],
)
def test_schedule_length_examples(sizes, deadlines, cap, expected):
    inst = ProblemInstance(sizes, deadlines, (1,) * len(sizes), cap)
    assert schedule_length(inst) == expected


def test_schedule_length_long_job_raises_m():
    # one 6-unit job among small ones on 3 machines: L~=3, so M = 6 - 3 + 1 = 4 -> clamped to 3
    inst = ProblemInstance((6, 1, 1, 1), (6, 6, 6, 6), (1, 1, 1, 1), 3)
    assert schedule_length(inst) == (3, 6, 3)


@given(arrays(np.uint8, st.tuples(st.integers(1, 5), st.integers(1, 6)), elements=st.integers(0, 1)))
def test_flatten_roundtrip(mat):
    s = Schedule(mat)
    assert unflatten(flatten(s), mat.shape[0]) == s


@given(instances(), st.data())
def test_extra_trailing_unit_never_lowers_tardiness(inst, data):
    sched = data.draw(schedules(inst.n_jobs))
    i = data.draw(st.integers(0, inst.n_jobs - 1))
    wider = np.zeros((inst.n_jobs, sched.length + 1), dtype=np.uint8)
    wider[:, : sched.length] = sched.matrix
    before = total_weighted_tardiness(inst, Schedule(wider))
    wider[i, -1] = 1
    assert total_weighted_tardiness(inst, Schedule(wider)) >= before


@given(instances(), st.data())
def test_validate_zero_means_feasible(inst, data):
    sched = data.draw(schedules(inst.n_jobs))
    diag = validate(inst, sched)
    rows = [sum(int(v) for v in row) for row in sched.matrix.tolist()]
    cols = [sum(int(row[j]) for row in sched.matrix.tolist()) for j in range(sched.length)]
    feasible = rows == list(inst.sizes) and all(c <= inst.capacity for c in cols)
    assert (diag.error_count == 0) == feasible
    assert diag.error_count == sum(abs(e) for e in diag.row_errors) + sum(diag.column_overloads)


@given(instances(max_jobs=6, max_size=8, max_deadline=20, max_capacity=4))
def test_length_covers_sizes_and_deadlines(inst):
    l_tilde, length, m = schedule_length(inst)
    assert length >= max(inst.sizes) and length >= max(inst.deadlines)
    assert l_tilde * inst.capacity >= sum(inst.sizes) > (l_tilde - 1) * inst.capacity
    assert 1 <= m <= l_tilde


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(sizes=(0,), deadlines=(1,), weights=(1,), capacity=1),
        dict(sizes=(1,), deadlines=(0,), weights=(1,), capacity=1),
        dict(sizes=(1,), deadlines=(1,), weights=(-1,), capacity=1),
        dict(sizes=(1,), deadlines=(1,), weights=(1,), capacity=0),
        dict(sizes=(1, 2), deadlines=(1,), weights=(1,), capacity=1),
    ],
)
def test_instance_rejects_bad_fields(kwargs):
    with pytest.raises(ValueError):
        ProblemInstance(**kwargs)


def test_schedule_rejects_non_binary():
    with pytest.raises(ValueError):
        Schedule(np.array([[0, 2]]))
    with pytest.raises(ValueError):
        Schedule(np.array([[0.5, 1]]))


def test_file_roundtrip(tmp_path, second_instance, second_schedule):
    ipath = tmp_path / "i.json"
    spath = tmp_path / "s.json"
    ipath.write_text(json.dumps(second_instance.to_dict()))
    spath.write_text(json.dumps(second_schedule.to_dict()))
    assert load_instance(ipath) == second_instance
    assert load_schedule(spath) == second_schedule
    data = json.loads(spath.read_text())
    assert data == {"format_version": 1, "length": 4, "rows": [[1, 0, 1, 0], [1, 1, 1, 0], [0, 1, 0, 1]]}


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        '{"format_version": 2, "sizes": [1], "deadlines": [1], "weights": [1], "capacity": 1}',
        '{"sizes": [1], "deadlines": [1], "capacity": 1}',
        '{"sizes": [0], "deadlines": [1], "weights": [1], "capacity": 1}',
    ],
)
def test_bad_instance_files(tmp_path, text):
    p = tmp_path / "bad.json"
    p.write_text(text)
    with pytest.raises(FormatError):
        load_instance(p)


def test_bad_schedule_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"format_version": 1, "length": 2, "rows": [[1, 0], [1]]}')
    with pytest.raises(FormatError):
        load_schedule(p)
