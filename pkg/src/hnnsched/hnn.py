"""Hopfield network solver: multi-restart alpha sweep plus schedule repair."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels
from .core import ProblemInstance, Schedule, schedule_length, total_weighted_tardiness
from .qp import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_GAMMA,
    HopfieldForm,
    ScheduleForm,
    ScheduleHopfield,
    lyapunov,
    to_hopfield,
)


@dataclass(frozen=True)
class SolverConfig:
    alpha0: float = DEFAULT_ALPHA
    alpha_step: float = 0.01
    beta: float = DEFAULT_BETA
    gamma: float = DEFAULT_GAMMA
    error_tolerance_e: int = 5
    restarts: int = 1000
    max_sweeps: int = 200
    max_alpha_iters: int = 500
    rng_seed: int = 0

    def __post_init__(self):
        if self.alpha0 < 0:
            raise ValueError("alpha0 must be >= 0")
        if self.alpha_step <= 0:
            raise ValueError("alpha_step must be > 0")
        if self.beta < 0 or self.gamma < 0:
            raise ValueError("beta and gamma must be >= 0")
        if self.error_tolerance_e < 0:
            raise ValueError("error_tolerance_e must be >= 0")
        if self.restarts < 0:
            raise ValueError("restarts must be >= 0")
        if self.max_sweeps < 1 or self.max_alpha_iters < 1:
            raise ValueError("max_sweeps and max_alpha_iters must be >= 1")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must fit in 64 unsigned bits")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class SolveResult:
    schedule: Schedule
    twt: float
    restarts_used: int
    alpha_final: float
    alpha_best: float
    sweeps_histogram: tuple[int, ...] = field(repr=False)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return {
            "twt": self.twt,
            "restarts_used": self.restarts_used,
            "alpha_final": self.alpha_final,
            "alpha_best": self.alpha_best,
            "sweeps_histogram": list(self.sweeps_histogram),
            "wall_time": self.wall_time,
            "schedule": self.schedule.to_dict(),
        }


def step_function(activation: float, current: int) -> int:
    """0/1 threshold unit; a zero activation leaves the state where it is."""
    return int(_kernels.step(float(activation), int(current)))


def random_start(dim: int, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=dim, dtype=np.uint8)


def restart_rng(seed: int, restart: int) -> np.random.Generator:
    """Independent stream for one restart, derived as ``seed + restart``."""
    return np.random.default_rng((seed + restart) % 2**64)


def hnn_descend(h, y0, max_sweeps: int, *, return_info: bool = False, debug: bool = False):
    """Run cyclic asynchronous updates from ``y0`` until a sweep changes nothing.

    With ``return_info`` the result is ``(y, sweeps, converged)``.  ``debug``
    uses a plain Python loop that checks after every single update that the
    Lyapunov value did not go up.
    """
    y = np.array(y0, dtype=np.uint8).reshape(-1)
    if y.size != h.dim:
        raise ValueError(f"start vector has length {y.size}, network has {h.dim} neurons")
    if debug:
        sweeps, converged = _descend_checked(h, y, max_sweeps)
    elif isinstance(h, ScheduleHopfield):
        sweeps, converged = _kernels.descend_structured(
            y, h.n_jobs, h.length, h.m, h.row_coupling, h.col_coupling, h.b_hat, max_sweeps
        )
    elif isinstance(h, HopfieldForm):
        sweeps, converged = _kernels.descend_dense(y, h.w_hat, h.b_hat, max_sweeps)
    else:
        raise TypeError(f"unsupported network type {type(h).__name__}")
    if return_info:
        return y, int(sweeps), bool(converged)
    return y


def _descend_checked(h, y, max_sweeps):
    w_hat = h.w_hat
    b_hat = h.b_hat
    energy = lyapunov(h, y)
    for sweep in range(1, max_sweeps + 1):
        changed = False
        for p in range(y.size):
            u = float(w_hat[p] @ y) - b_hat[p]
            new = step_function(u, y[p])
            if new != y[p]:
                y[p] = new
                changed = True
                after = lyapunov(h, y)
                if after > energy + 1e-9 * max(1.0, abs(energy)):
                    raise AssertionError(
                        f"Lyapunov value rose from {energy} to {after} at neuron {p}"
                    )
                energy = after
        if not changed:
            return sweep, True
    return max_sweeps, False


def correct_schedule(instance: ProblemInstance, schedule: Schedule) -> Schedule:
    """Repair a schedule into a feasible one.

    Overloaded slots lose units of their lightest jobs (lowest index on ties),
    then each job in turn drops its rightmost surplus units and fills missing
    units into the leftmost slots with spare capacity, widening the schedule
    when every existing slot is full.
    """
    if schedule.n_jobs != instance.n_jobs:
        raise ValueError("schedule row count differs from the number of jobs")
    arrays = _instance_arrays(instance)
    fixed = _kernels.correct(
        np.ascontiguousarray(schedule.matrix), arrays[0], arrays[2], instance.capacity
    )
    return Schedule(fixed)


def _instance_arrays(instance: ProblemInstance):
    return (
        np.asarray(instance.sizes, dtype=np.int64),
        np.asarray(instance.deadlines, dtype=np.int64),
        np.asarray(instance.weights, dtype=np.float64),
    )


def solve(instance: ProblemInstance, config: SolverConfig = SolverConfig()) -> SolveResult:
    if config.restarts < 1:
        raise ValueError("restarts must be >= 1 to produce a schedule")
    start = time.perf_counter()
    _, length, m = schedule_length(instance)
    # alpha only shifts the thresholds of late slots: b_hat(alpha) = base + alpha * late
    form = ScheduleForm(instance, length, m, 0.0, config.beta, config.gamma)
    h0 = to_hopfield(form)
    late = form.late_weights()
    sizes, deadlines, weights = _instance_arrays(instance)

    best = None
    best_twt = np.inf
    best_alpha = config.alpha0
    final_alpha = config.alpha0
    histogram = []
    for r in range(config.restarts):
        y0 = random_start(form.dim, restart_rng(config.rng_seed, r))
        sched, t, a_best, a_final, _, sweeps = _kernels.run_restart(
            y0,
            instance.n_jobs,
            length,
            m,
            h0.row_coupling,
            h0.col_coupling,
            h0.b_hat,
            late,
            float(config.alpha0),
            float(config.alpha_step),
            int(config.error_tolerance_e),
            int(config.max_alpha_iters),
            int(config.max_sweeps),
            sizes,
            deadlines,
            weights,
            instance.capacity,
        )
        histogram.append(int(sweeps))
        if t < best_twt:
            best, best_twt, best_alpha, final_alpha = sched, t, a_best, a_final
    schedule = Schedule(best)
    return SolveResult(
        schedule=schedule,
        twt=total_weighted_tardiness(instance, schedule),
        restarts_used=config.restarts,
        alpha_final=float(final_alpha),
        alpha_best=float(best_alpha),
        sweeps_histogram=tuple(histogram),
        wall_time=time.perf_counter() - start,
    )
