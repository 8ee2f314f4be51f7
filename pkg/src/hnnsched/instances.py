"""Seeded random instance generator.

Draws come from numpy's ``PCG64`` bit generator through
``numpy.random.default_rng(seed).integers`` (inclusive bounds), in the order:
all sizes, then all deadline offsets, then all weights.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ProblemInstance

RNG_NAME = "numpy-PCG64/default_rng/integers(endpoint=True)"


@dataclass(frozen=True)
class GeneratorConfig:
    n_jobs: int
    c1: int = 10
    c2: int = 5
    capacity_ratio: float = 0.25
    rng_seed: int = 0

    def __post_init__(self):
        if self.n_jobs < 1:
            raise ValueError("n_jobs must be >= 1")
        if self.c1 < 1 or self.c2 < 1:
            raise ValueError("c1 and c2 must be >= 1")
        if not 0 < self.capacity_ratio <= 1:
            raise ValueError("capacity_ratio must lie in (0, 1]")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must fit in 64 unsigned bits")


def capacity_for(n_jobs: int, ratio: float = 0.25) -> int:
    # round half up, never below one machine
    return max(1, math.floor(ratio * n_jobs + 0.5))


def generate(config: GeneratorConfig) -> ProblemInstance:
    rng = np.random.default_rng(config.rng_seed)
    n, c1 = config.n_jobs, config.c1
    sizes = rng.integers(1, c1, size=n, endpoint=True)
    offsets = rng.integers(c1, (3 * c1) // 2, size=n, endpoint=True)
    weights = rng.integers(1, config.c2, size=n, endpoint=True)
    return ProblemInstance(
        sizes=tuple(sizes.tolist()),
        deadlines=tuple((sizes + offsets).tolist()),
        weights=tuple(float(w) for w in weights),
        capacity=capacity_for(n, config.capacity_ratio),
    )


def instance_seed(base_seed: int, index: int) -> int:
    return (base_seed + index) % 2**64


def generate_batch(config: GeneratorConfig, count: int) -> list[ProblemInstance]:
    if count < 1:
        raise ValueError("count must be >= 1")
    return [generate(_with_seed(config, instance_seed(config.rng_seed, k))) for k in range(count)]


def _with_seed(config: GeneratorConfig, seed: int) -> GeneratorConfig:
    return GeneratorConfig(config.n_jobs, config.c1, config.c2, config.capacity_ratio, seed)
