"""Exact minimum-TWT schedules for desk-size instances by branch and bound."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx
import numpy as np

from .core import ProblemInstance, Schedule, schedule_length

MAX_JOBS = 6
MAX_HORIZON = 12


class OracleLimitError(ValueError):
    """Instance or horizon outside what the exact search accepts."""


@dataclass(frozen=True)
class OracleResult:
    optimum_twt: float
    schedule: Schedule
    nodes_explored: int


def default_horizon(instance: ProblemInstance) -> int:
    """``L + max x`` capped at the guard rail, but never below ``L``."""
    _, length, _ = schedule_length(instance)
    return max(length, min(length + max(instance.sizes), MAX_HORIZON))


def solve_exact(instance: ProblemInstance, horizon: int | None = None) -> OracleResult:
    """Depth-first search over which jobs run in each slot.

    Only slots that run ``min(V, unfinished)`` jobs are branched on: moving a
    later unit of an idle job into a slot with a free machine never delays a
    finish time, so some optimum has this form.  A branch is cut when its
    accrued tardiness plus the tardiness every unfinished job must still incur
    reaches the incumbent, or when the same (slot, remaining work) state was
    already reached at no higher cost.
    """
    n, cap = instance.n_jobs, instance.capacity
    if n > MAX_JOBS:
        raise OracleLimitError(f"{n} jobs exceeds the exact-search limit of {MAX_JOBS}")
    if horizon is None:
        horizon = default_horizon(instance)
    if horizon > MAX_HORIZON:
        raise OracleLimitError(f"horizon {horizon} exceeds the exact-search limit of {MAX_HORIZON}")
    l_tilde = -(-sum(instance.sizes) // cap)
    if horizon < max(l_tilde, max(instance.sizes)):
        raise OracleLimitError(f"horizon {horizon} cannot hold the total work at capacity {cap}")

    sizes = instance.sizes
    deadlines = instance.deadlines
    weights = instance.weights
    best_cost = float("inf")
    best_cols: list[tuple[int, ...]] = []
    seen: dict[tuple, float] = {}
    nodes = 0
    cols: list[tuple[int, ...]] = []

    def bound(t, remaining):
        lb = 0.0
        for i, r in enumerate(remaining):
            if r:
                late = t + r - 1 - deadlines[i]
                if late > 0:
                    lb += weights[i] * late
        return lb

    def search(t, remaining, cost):
        nonlocal best_cost, best_cols, nodes
        nodes += 1
        active = [i for i, r in enumerate(remaining) if r]
        if not active:
            if cost < best_cost:
                best_cost = cost
                best_cols = list(cols)
            return
        slots_left = horizon - t + 1
        if max(remaining) > slots_left or sum(remaining) > cap * slots_left:
            return
        if cost + bound(t, remaining) >= best_cost:
            return
        key = (t, remaining)
        if seen.get(key, float("inf")) <= cost:
            return
        seen[key] = cost
        k = min(cap, len(active))
        # jobs closest to their deadline relative to leftover work go first
        active.sort(key=lambda i: (deadlines[i] - remaining[i], -weights[i], i))
        for chosen in combinations(active, k):
            nxt = list(remaining)
            added = 0.0
            for i in chosen:
                nxt[i] -= 1
                if nxt[i] == 0 and t > deadlines[i]:
                    added += weights[i] * (t - deadlines[i])
            cols.append(chosen)
            search(t + 1, tuple(nxt), cost + added)
            cols.pop()

    search(1, tuple(sizes), 0.0)
    if not best_cols:
        raise OracleLimitError(f"no feasible schedule fits in horizon {horizon}")
    mat = np.zeros((n, len(best_cols)), dtype=np.uint8)
    for j, chosen in enumerate(best_cols):
        mat[list(chosen), j] = 1
    return OracleResult(float(best_cost), Schedule(mat), nodes)


def lower_bound_feasibility(instance: ProblemInstance) -> bool:
    """True iff a schedule with zero tardiness exists.

    Max-flow from each job (capacity ``x_i``) to each slot up to its deadline
    (capacity 1) to a sink (capacity ``V`` per slot).
    """
    g = nx.DiGraph()
    horizon = max(instance.deadlines)
    for i, (x, k) in enumerate(zip(instance.sizes, instance.deadlines)):
        if x > k:
            return False
        g.add_edge("s", ("job", i), capacity=x)
        for t in range(1, k + 1):
            g.add_edge(("job", i), ("slot", t), capacity=1)
    for t in range(1, horizon + 1):
        g.add_edge(("slot", t), "t", capacity=instance.capacity)
    flow, _ = nx.maximum_flow(g, "s", "t")
    return flow == sum(instance.sizes)
