"""Quadratic energy for the scheduling problem.

The energy of a flattened schedule ``y`` is ``-1/2 y^T W y + b^T y`` with

    W = alpha * W_A + beta * W_B + gamma * W_C
    b = alpha * b_A + beta * b_B + gamma * b_C

where the ``A`` block charges ``w_i`` for every unit of job ``i`` placed after
its deadline, ``B`` penalises ``(row_sum_i - x_i)^2`` and ``C`` penalises
``(col_sum_j - V)^2`` over the first ``M`` slots.  Up to the constant
``beta * sum(x^2) + gamma * M * V^2`` the energy equals :func:`penalty_of`.

Two representations exist.  :class:`QuadraticForm` is the dense matrix form,
used for debugging and cross-checks.  :class:`ScheduleForm` keeps only the
structure (per-neuron diagonal, one constant coupling inside each job block and
one constant coupling inside each of the first ``M`` columns) and is what the
solver runs on.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ProblemInstance, Schedule, unflatten

DEFAULT_ALPHA = 0.1
DEFAULT_BETA = 5.0
DEFAULT_GAMMA = 5.0
MAX_DUMP_DIM = 400


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    w_matrix: np.ndarray
    b_vector: np.ndarray
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        w = np.array(self.w_matrix, dtype=float)
        b = np.array(self.b_vector, dtype=float).reshape(-1)
        if w.shape != (b.size, b.size):
            raise ValueError(f"W has shape {w.shape}, expected {(b.size, b.size)}")
        if not np.array_equal(w, w.T):
            raise ValueError("W must be symmetric")
        object.__setattr__(self, "w_matrix", w)
        object.__setattr__(self, "b_vector", b)

    @property
    def dim(self) -> int:
        return self.b_vector.size

    def to_dict(self) -> dict:
        if self.dim > MAX_DUMP_DIM:
            raise ValueError(f"refusing to dump a form of dimension {self.dim} > {MAX_DUMP_DIM}")
        return {"dim": self.dim, "w": self.w_matrix.tolist(), "b": self.b_vector.tolist()}


@dataclass(frozen=True, eq=False)
class HopfieldForm:
    """Dense Hopfield parameters: zero-diagonal ``w_hat`` and threshold ``b_hat``."""

    w_hat: np.ndarray
    b_hat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "w_hat", np.array(self.w_hat, dtype=float))
        object.__setattr__(self, "b_hat", np.array(self.b_hat, dtype=float).reshape(-1))
        if np.any(np.diag(self.w_hat) != 0):
            raise ValueError("w_hat must have a zero diagonal")

    @property
    def dim(self) -> int:
        return self.b_hat.size


@dataclass(frozen=True, eq=False)
class ScheduleForm:
    """Structured energy for one instance with horizon ``length`` and ``m`` full slots."""

    instance: ProblemInstance
    length: int
    m: int
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    gamma: float = DEFAULT_GAMMA

    def __post_init__(self):
        _check_horizon(self.instance, self.length)
        if not 1 <= self.m <= self.length:
            raise ValueError(f"need 1 <= M <= L, got M={self.m}, L={self.length}")
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError("alpha, beta, gamma must be >= 0")

    @property
    def n_jobs(self) -> int:
        return self.instance.n_jobs

    @property
    def dim(self) -> int:
        return self.instance.n_jobs * self.length

    def late_weights(self) -> np.ndarray:
        """Flat vector holding ``w_i`` where slot j > K_i, else 0."""
        return _late_weights(self.instance, self.length).reshape(-1)

    def diagonal(self) -> np.ndarray:
        full = np.zeros(self.length)
        full[: self.m] = 1.0
        return (
            -2 * self.alpha * self.late_weights()
            - 2 * self.beta
            - 2 * self.gamma * np.tile(full, self.n_jobs)
        )

    def b_vector(self) -> np.ndarray:
        x = np.repeat(np.asarray(self.instance.sizes, dtype=float), self.length)
        full = np.zeros(self.length)
        full[: self.m] = 1.0
        return -2 * self.beta * x - 2 * self.gamma * self.instance.capacity * np.tile(
            full, self.n_jobs
        )

    def dense(self) -> QuadraticForm:
        return assemble(
            self.instance, self.length, self.m, self.alpha, self.beta, self.gamma
        )

    def energy(self, y) -> float:
        y = _as_vector(y, self.dim).astype(float)
        mat = y.reshape(self.n_jobs, self.length)
        rows = mat.sum(axis=1)
        cols = mat[:, : self.m].sum(axis=0)
        quad = (
            self.alpha * np.dot(self.late_weights(), y * y)
            + self.beta * np.dot(rows, rows)
            + self.gamma * np.dot(cols, cols)
        )
        return float(quad + np.dot(self.b_vector(), y))

    def constant(self) -> float:
        """Offset that turns :meth:`energy` into the penalty value."""
        x = np.asarray(self.instance.sizes, dtype=float)
        return float(
            self.beta * np.dot(x, x) + self.gamma * self.m * self.instance.capacity**2
        )


@dataclass(frozen=True, eq=False)
class ScheduleHopfield:
    """Structured Hopfield network of a :class:`ScheduleForm`.

    Off-diagonal couplings are ``row_coupling`` between two neurons of the same
    job and ``col_coupling`` between two neurons sharing one of the first ``m``
    slots; both add when a pair shares row and column (it cannot, off the
    diagonal).
    """

    n_jobs: int
    length: int
    m: int
    row_coupling: float
    col_coupling: float
    b_hat: np.ndarray

    @property
    def dim(self) -> int:
        return self.n_jobs * self.length

    @property
    def w_hat(self) -> np.ndarray:
        n, L, m = self.n_jobs, self.length, self.m
        d = np.zeros((L, L))
        d[np.arange(m), np.arange(m)] = 1.0
        w = self.row_coupling * np.kron(np.eye(n), np.ones((L, L)))
        w += self.col_coupling * np.kron(np.ones((n, n)), d)
        np.fill_diagonal(w, 0.0)
        return w

    def dense(self) -> HopfieldForm:
        return HopfieldForm(self.w_hat, self.b_hat)


def _check_horizon(instance: ProblemInstance, length: int) -> None:
    if length < max(instance.deadlines):
        raise ValueError(
            f"horizon L={length} is shorter than the latest deadline {max(instance.deadlines)}"
        )


def _late_weights(instance: ProblemInstance, length: int) -> np.ndarray:
    slots = np.arange(1, length + 1)
    late = slots[None, :] > np.asarray(instance.deadlines)[:, None]
    return late * np.asarray(instance.weights, dtype=float)[:, None]


def _as_vector(y, dim: int) -> np.ndarray:
    y = np.asarray(y).reshape(-1)
    if y.size != dim:
        raise ValueError(f"vector has length {y.size}, form has dimension {dim}")
    return y


def build_objective_block(instance: ProblemInstance, length: int):
    _check_horizon(instance, length)
    diag = _late_weights(instance, length).reshape(-1)
    return -2.0 * np.diag(diag), np.zeros(diag.size)


def build_jobsize_block(instance: ProblemInstance, length: int):
    n = instance.n_jobs
    w_b = -2.0 * np.kron(np.eye(n), np.ones((length, length)))
    b_b = -2.0 * np.repeat(np.asarray(instance.sizes, dtype=float), length)
    return w_b, b_b


def build_capacity_block(instance: ProblemInstance, length: int, m: int):
    if not 1 <= m <= length:
        raise ValueError(f"need 1 <= M <= L, got M={m}, L={length}")
    n = instance.n_jobs
    d = np.zeros((length, length))
    d[np.arange(m), np.arange(m)] = 1.0
    w_c = -2.0 * np.kron(np.ones((n, n)), d)
    block = np.zeros(length)
    block[:m] = -2.0 * instance.capacity
    return w_c, np.tile(block, n)


def assemble(
    instance: ProblemInstance,
    length: int,
    m: int,
    alpha: float = DEFAULT_ALPHA,
    beta: float = DEFAULT_BETA,
    gamma: float = DEFAULT_GAMMA,
) -> QuadraticForm:
    if min(alpha, beta, gamma) < 0:
        raise ValueError("alpha, beta, gamma must be >= 0")
    w_a, b_a = build_objective_block(instance, length)
    w_b, b_b = build_jobsize_block(instance, length)
    w_c, b_c = build_capacity_block(instance, length, m)
    return QuadraticForm(
        alpha * w_a + beta * w_b + gamma * w_c,
        alpha * b_a + beta * b_b + gamma * b_c,
        alpha,
        beta,
        gamma,
    )


def to_hopfield(q):
    """Move the diagonal of W into the threshold.

    For binary ``y``, ``y_p^2 == y_p``, so dropping ``W_pp`` from the quadratic
    part and subtracting ``W_pp / 2`` from ``b`` leaves the energy unchanged.
    The asynchronous network then descends exactly this energy.
    """
    if isinstance(q, ScheduleForm):
        return ScheduleHopfield(
            n_jobs=q.n_jobs,
            length=q.length,
            m=q.m,
            row_coupling=-2.0 * q.beta,
            col_coupling=-2.0 * q.gamma,
            b_hat=q.b_vector() - 0.5 * q.diagonal(),
        )
    w = q.w_matrix
    d = np.diag(w).copy()
    w_hat = w - np.diag(d)
    return HopfieldForm(w_hat, q.b_vector - 0.5 * d)


def energy_of(q, y) -> float:
    """``-1/2 y^T W y + b^T y`` for a dense or structured form."""
    if isinstance(q, ScheduleForm):
        return q.energy(y)
    y = _as_vector(y, q.dim).astype(float)
    return float(-0.5 * y @ q.w_matrix @ y + q.b_vector @ y)


def lyapunov(h, y) -> float:
    """``-1/2 y^T W_hat y + b_hat^T y`` of a Hopfield network."""
    y = _as_vector(y, h.dim).astype(float)
    if isinstance(h, ScheduleHopfield):
        mat = y.reshape(h.n_jobs, h.length)
        rows = mat.sum(axis=1)
        cols = mat[:, : h.m].sum(axis=0)
        yy = np.dot(y, y)
        ym = np.dot(mat[:, : h.m].reshape(-1), mat[:, : h.m].reshape(-1))
        quad = h.row_coupling * (np.dot(rows, rows) - yy) + h.col_coupling * (
            np.dot(cols, cols) - ym
        )
        return float(-0.5 * quad + np.dot(h.b_hat, y))
    return float(-0.5 * y @ h.w_hat @ y + h.b_hat @ y)


def penalty_of(
    instance: ProblemInstance,
    length: int,
    m: int,
    alpha: float,
    beta: float,
    gamma: float,
    schedule,
) -> float:
    """Objective plus both penalties, counted straight off the matrix."""
    if not isinstance(schedule, Schedule):
        schedule = unflatten(schedule, instance.n_jobs)
    mat = schedule.matrix.astype(np.int64)
    if mat.shape != (instance.n_jobs, length):
        raise ValueError(f"schedule shape {mat.shape} != {(instance.n_jobs, length)}")
    late = 0.0
    for i, (k, w) in enumerate(zip(instance.deadlines, instance.weights)):
        late += w * int(mat[i, k:].sum())
    size_pen = sum((int(r) - x) ** 2 for r, x in zip(mat.sum(axis=1), instance.sizes))
    cap_pen = sum((int(c) - instance.capacity) ** 2 for c in mat[:, :m].sum(axis=0))
    return alpha * late + beta * size_pen + gamma * cap_pen
