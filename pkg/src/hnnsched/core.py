"""Problem instances, schedule matrices, tardiness and feasibility.

Slots are 1-based in every formula and file format. Internally a schedule is a
numpy ``uint8`` array of shape ``(n_jobs, length)`` where column ``j`` holds
slot ``j + 1``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

FORMAT_VERSION = 1


class FormatError(ValueError):
    """Raised when an instance or schedule file cannot be parsed."""


@dataclass(frozen=True)
class ProblemInstance:
    sizes: tuple[int, ...]
    deadlines: tuple[int, ...]
    weights: tuple[float, ...]
    capacity: int

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        deadlines = tuple(int(k) for k in self.deadlines)
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "deadlines", deadlines)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "capacity", int(self.capacity))
        if not sizes:
            raise ValueError("instance needs at least one job")
        if not (len(sizes) == len(deadlines) == len(weights)):
            raise ValueError("sizes, deadlines and weights must have equal length")
        if min(sizes) < 1:
            raise ValueError("job sizes must be >= 1")
        if min(deadlines) < 1:
            raise ValueError("deadlines must be >= 1")
        if min(weights) < 0 or not all(math.isfinite(w) for w in weights):
            raise ValueError("weights must be finite and >= 0")
        if self.capacity < 1:
            raise ValueError("capacity must be >= 1")

    @property
    def n_jobs(self) -> int:
        return len(self.sizes)

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "sizes": list(self.sizes),
            "deadlines": list(self.deadlines),
            "weights": [int(w) if float(w).is_integer() else w for w in self.weights],
            "capacity": self.capacity,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ProblemInstance":
        _check_version(data)
        try:
            return cls(
                sizes=tuple(data["sizes"]),
                deadlines=tuple(data["deadlines"]),
                weights=tuple(data["weights"]),
                capacity=data["capacity"],
            )
        except (KeyError, TypeError) as exc:
            raise FormatError(f"bad instance object: {exc}") from exc
        except ValueError as exc:
            raise FormatError(str(exc)) from exc


@dataclass(frozen=True, eq=False)
class Schedule:
    """Binary job-by-slot matrix; ``matrix[i, j] == 1`` iff job i runs in slot j+1."""

    matrix: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.matrix)
        if raw.ndim != 2:
            raise ValueError("schedule matrix must be 2-D")
        if raw.shape[1] < 1:
            raise ValueError("schedule length must be >= 1")
        if not np.isin(raw, (0, 1)).all():
            raise ValueError("schedule entries must be 0 or 1")
        m = raw.astype(np.uint8, copy=True)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def n_jobs(self) -> int:
        return self.matrix.shape[0]

    @property
    def length(self) -> int:
        return self.matrix.shape[1]

    def __eq__(self, other):
        if not isinstance(other, Schedule):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool(
            np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.matrix.shape, self.matrix.tobytes()))

    def to_dict(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "length": self.length,
            "rows": self.matrix.astype(int).tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Schedule":
        _check_version(data)
        try:
            rows = data["rows"]
            length = int(data["length"])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad schedule object: {exc}") from exc
        if not isinstance(rows, list) or any(
            not isinstance(r, list) or len(r) != length for r in rows
        ):
            raise FormatError("every row must be a list of exactly `length` entries")
        if any(v not in (0, 1) or isinstance(v, bool) for r in rows for v in r):
            raise FormatError("schedule entries must be 0 or 1")
        try:
            return cls(np.array(rows, dtype=np.uint8).reshape(len(rows), length))
        except ValueError as exc:
            raise FormatError(str(exc)) from exc


@dataclass(frozen=True)
class ScheduleDiagnostics:
    row_errors: tuple[int, ...]
    column_overloads: tuple[int, ...]
    error_count: int = field(init=False)

    def __post_init__(self):
        count = sum(abs(e) for e in self.row_errors) + sum(self.column_overloads)
        object.__setattr__(self, "error_count", int(count))

    @property
    def valid(self) -> bool:
        return self.error_count == 0


def _check_version(data) -> None:
    if not isinstance(data, dict):
        raise FormatError("expected a JSON object")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version!r}")


def finish_time(schedule: Schedule, job: int) -> int:
    """1-based slot of the last unit of ``job`` (0-based index); 0 for an empty row."""
    nz = np.flatnonzero(schedule.matrix[job])
    return int(nz[-1]) + 1 if nz.size else 0


def finish_times(schedule: Schedule) -> np.ndarray:
    m = schedule.matrix
    has = m.any(axis=1)
    last = m.shape[1] - np.argmax(m[:, ::-1], axis=1)
    return np.where(has, last, 0)


def total_weighted_tardiness(instance: ProblemInstance, schedule: Schedule) -> float:
    if schedule.n_jobs != instance.n_jobs:
        raise ValueError("schedule row count differs from the number of jobs")
    tardy = np.maximum(0, finish_times(schedule) - np.asarray(instance.deadlines))
    return float(np.dot(np.asarray(instance.weights), tardy))


def validate(instance: ProblemInstance, schedule: Schedule) -> ScheduleDiagnostics:
    if schedule.n_jobs != instance.n_jobs:
        raise ValueError("schedule row count differs from the number of jobs")
    m = schedule.matrix.astype(np.int64)
    rows = m.sum(axis=1) - np.asarray(instance.sizes)
    cols = np.maximum(0, m.sum(axis=0) - instance.capacity)
    return ScheduleDiagnostics(tuple(int(r) for r in rows), tuple(int(c) for c in cols))


def flatten(schedule: Schedule) -> np.ndarray:
    """Row-major binary vector: job blocks of length L, one after another."""
    return schedule.matrix.reshape(-1).copy()


def unflatten(y, n_jobs: int) -> Schedule:
    y = np.asarray(y)
    if n_jobs < 1 or y.size % n_jobs or y.size == 0:
        raise ValueError(f"cannot split vector of length {y.size} into {n_jobs} rows")
    return Schedule(y.reshape(n_jobs, -1))


def schedule_length(instance: ProblemInstance) -> tuple[int, int, int]:
    """Return ``(L_tilde, L, M)``.

    ``L_tilde`` is the capacity-driven length, ``L`` the horizon that also fits
    the longest job and the latest deadline, and ``M`` the number of leading
    slots whose capacity is forced to be fully used.
    """
    total = sum(instance.sizes)
    # integer ceil; no float rounding
    l_tilde = -(-total // instance.capacity)
    longest = max(instance.sizes)
    length = max(l_tilde, longest, max(instance.deadlines))
    m = min(max(1, longest - l_tilde + 1), l_tilde)
    return l_tilde, length, m


def load_instance(path) -> ProblemInstance:
    return ProblemInstance.from_dict(_load_json(path))


def load_schedule(path) -> Schedule:
    """Read a schedule file, or the schedule embedded in a solver result file."""
    data = _load_json(path)
    if isinstance(data, dict) and "rows" not in data and isinstance(data.get("schedule"), dict):
        data = data["schedule"]
    return Schedule.from_dict(data)


def _load_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def dump_json(obj: dict, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")
