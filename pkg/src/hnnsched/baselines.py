"""Priority-rule list schedulers used as comparison baselines."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ProblemInstance, Schedule, total_weighted_tardiness

RULES = ("edd", "wspt", "lwpf", "lbs", "random")


@dataclass(frozen=True)
class JobOrdering:
    """Priority order as 0-based job indices, highest priority first."""

    permutation: tuple[int, ...]
    rule: str

    def __post_init__(self):
        perm = tuple(int(i) for i in self.permutation)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation of 0..{len(perm) - 1}")
        object.__setattr__(self, "permutation", perm)


def _ordered(instance: ProblemInstance, key, rule: str) -> JobOrdering:
    # sorted() is stable, so ties stay in ascending job index
    return JobOrdering(tuple(sorted(range(instance.n_jobs), key=key)), rule)


def order_edd(instance: ProblemInstance) -> JobOrdering:
    return _ordered(instance, lambda i: instance.deadlines[i], "edd")


def order_wspt(instance: ProblemInstance) -> JobOrdering:
    """Ascending size/weight; zero-weight jobs go last."""

    def ratio(i):
        w = instance.weights[i]
        return instance.sizes[i] / w if w > 0 else math.inf

    return _ordered(instance, ratio, "wspt")


def order_lwpf(instance: ProblemInstance) -> JobOrdering:
    return _ordered(instance, lambda i: -instance.weights[i], "lwpf")


def order_random(instance: ProblemInstance, rng: np.random.Generator) -> JobOrdering:
    return JobOrdering(tuple(rng.permutation(instance.n_jobs).tolist()), "random")


def list_schedule(instance: ProblemInstance, ordering: JobOrdering) -> Schedule:
    """Run the first V unfinished jobs of the ordering in every slot until all finish."""
    if len(ordering.permutation) != instance.n_jobs:
        raise ValueError("ordering length differs from the number of jobs")
    remaining = list(instance.sizes)
    columns = []
    while any(remaining):
        col = np.zeros(instance.n_jobs, dtype=np.uint8)
        picked = 0
        for i in ordering.permutation:
            if remaining[i] > 0:
                col[i] = 1
                remaining[i] -= 1
                picked += 1
                if picked == instance.capacity:
                    break
        columns.append(col)
    return Schedule(np.stack(columns, axis=1))


def schedule_lbs(instance: ProblemInstance) -> Schedule:
    """Backward fill from the latest deadline, jobs in decreasing deadline order.

    Each job takes the latest slots at or before its own deadline that still
    have a free machine.  Units that do not fit there go to the earliest free
    slots after the deadline.
    """
    n, cap = instance.n_jobs, instance.capacity
    horizon = max(instance.deadlines) + sum(instance.sizes)
    mat = np.zeros((n, horizon), dtype=np.uint8)
    load = np.zeros(horizon, dtype=np.int64)
    order = sorted(range(n), key=lambda i: -instance.deadlines[i])
    for i in order:
        need = instance.sizes[i]
        for j in range(instance.deadlines[i] - 1, -1, -1):
            if need == 0:
                break
            if load[j] < cap:
                mat[i, j] = 1
                load[j] += 1
                need -= 1
        j = instance.deadlines[i]
        while need:
            if load[j] < cap:
                mat[i, j] = 1
                load[j] += 1
                need -= 1
            j += 1
    used = int(np.flatnonzero(load).max()) + 1
    return Schedule(mat[:, :used])


def schedule_for(instance: ProblemInstance, rule: str, rng=None) -> Schedule:
    rule = rule.lower()
    if rule == "lbs":
        return schedule_lbs(instance)
    if rule == "random":
        if rng is None:
            raise ValueError("the random rule needs an rng")
        return list_schedule(instance, order_random(instance, rng))
    orders = {"edd": order_edd, "wspt": order_wspt, "lwpf": order_lwpf}
    if rule not in orders:
        raise ValueError(f"unknown rule {rule!r}; expected one of {RULES}")
    return list_schedule(instance, orders[rule](instance))


def run_baseline(instance: ProblemInstance, rule: str, rng=None, repeats: int = 1):
    """Best ``(schedule, twt)`` over ``repeats`` runs; only ``random`` varies between runs."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    if rule.lower() != "random":
        repeats = 1
    best = None
    for _ in range(repeats):
        sched = schedule_for(instance, rule, rng)
        t = total_weighted_tardiness(instance, sched)
        if best is None or t < best[1]:
            best = (sched, t)
    return best
