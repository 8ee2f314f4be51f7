"""Benchmark harness: batches of random instances, every method on each, aggregated."""
from __future__ import annotations

import csv
import io
import logging
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .baselines import run_baseline
from .core import ProblemInstance, validate
from .hnn import SolverConfig, solve
from .instances import GeneratorConfig, generate_batch
from .oracle import solve_exact

log = logging.getLogger(__name__)

METHODS = ("hnn", "edd", "wspt", "lwpf", "lbs", "random")
DEFAULT_SIZES = (5, 10, 20, 25, 50, 75, 100)
CSV_COLUMNS = ("size", "method", "mean_twt", "ratio_to_hnn", "win_rate_hnn", "mean_ms")
TIME_COLUMNS = ("mean_ms",)
THREADS_ENV = "TWT_HNN_THREADS"


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple[int, ...] = DEFAULT_SIZES
    count: int = 100
    methods: tuple[str, ...] = METHODS
    seed: int = 0
    random_repeats: int = 1000
    solver: SolverConfig = field(default_factory=SolverConfig)
    c1: int = 10
    c2: int = 5
    capacity_ratio: float = 0.25
    threads: int = 1

    def __post_init__(self):
        unknown = set(self.methods) - set(METHODS) - {"oracle"}
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.random_repeats < 1:
            raise ValueError("random_repeats must be >= 1")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sizes"] = list(self.sizes)
        d["methods"] = list(self.methods)
        return d


@dataclass(frozen=True)
class RunRecord:
    size: int
    index: int
    method: str
    twt: float | None
    wall_ms: float
    valid: bool
    error: str | None = None


@dataclass
class BenchReport:
    per_size: list[dict]
    win_rate_vs: dict[str, float]
    instance_count: int
    config_echo: dict
    records: list[RunRecord] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "per_size": self.per_size,
            "win_rate_vs": self.win_rate_vs,
            "instance_count": self.instance_count,
            "config_echo": self.config_echo,
            "warnings": self.warnings,
            "records": [asdict(r) for r in self.records],
        }

    def rows(self) -> list[dict]:
        out = []
        for entry in self.per_size:
            for method, stats in entry["per_method"].items():
                out.append(
                    {
                        "size": entry["n_jobs"],
                        "method": method,
                        "mean_twt": stats["mean_twt"],
                        "ratio_to_hnn": stats.get("ratio_to_hnn"),
                        "win_rate_hnn": stats.get("win_rate_hnn"),
                        "mean_ms": stats["mean_wall_time"],
                    }
                )
        return out

    def to_csv(self, include_time: bool = True) -> str:
        cols = [c for c in CSV_COLUMNS if include_time or c not in TIME_COLUMNS]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in self.rows():
            writer.writerow({k: _fmt(v) for k, v in row.items()})
        return buf.getvalue()


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6g}"
    return v


def resolve_threads(threads: int | None) -> int:
    if threads:
        return max(1, threads)
    env = os.environ.get(THREADS_ENV)
    return max(1, int(env)) if env else 1


def stream_seed(*parts: int) -> int:
    """64-bit seed for one named stream, independent of the others."""
    return int(np.random.SeedSequence([int(p) for p in parts]).generate_state(1, np.uint64)[0])


def run_method(
    instance: ProblemInstance, method: str, seed: int, config: BenchConfig
) -> tuple:
    """Return ``(schedule, twt)`` for one method on one instance."""
    if method == "hnn":
        res = solve(instance, replace(config.solver, rng_seed=seed))
        return res.schedule, res.twt
    if method == "oracle":
        res = solve_exact(instance)
        return res.schedule, res.optimum_twt
    rng = np.random.default_rng(seed)
    return run_baseline(instance, method, rng, config.random_repeats)


def _run_instance(args) -> list[RunRecord]:
    size, index, instance, config = args
    out = []
    for m_idx, method in enumerate(config.methods):
        seed = stream_seed(config.seed, size, index, m_idx + 1)
        start = time.perf_counter()
        try:
            sched, twt = run_method(instance, method, seed, config)
            ok = validate(instance, sched).error_count == 0
            err = None if ok else "invalid schedule"
        except Exception as exc:  # noqa: BLE001 - one failure must not stop the batch
            twt, ok, err = None, False, f"{type(exc).__name__}: {exc}"
        wall = (time.perf_counter() - start) * 1000.0
        out.append(RunRecord(size, index, method, twt, wall, ok, err))
    return out


def instances_for(config: BenchConfig, size: int) -> list[ProblemInstance]:
    gen = GeneratorConfig(size, config.c1, config.c2, config.capacity_ratio, config.seed)
    return generate_batch(gen, config.count)


def run_bench(config: BenchConfig) -> BenchReport:
    jobs = []
    for size in config.sizes:
        for index, inst in enumerate(instances_for(config, size)):
            jobs.append((size, index, inst, config))
    threads = resolve_threads(config.threads)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_run_instance, jobs))
    else:
        chunks = [_run_instance(j) for j in jobs]
    order = {m: k for k, m in enumerate(config.methods)}
    records = sorted(
        (r for chunk in chunks for r in chunk),
        key=lambda r: (r.size, r.index, order[r.method]),
    )
    return aggregate(records, config)


def aggregate(records: list[RunRecord], config: BenchConfig) -> BenchReport:
    warnings = [
        f"size {r.size} instance {r.index} method {r.method}: {r.error}"
        for r in records
        if r.error
    ]
    for w in warnings:
        log.warning(w)
    by_key = {(r.size, r.index, r.method): r for r in records}
    per_size = []
    pair_wins: dict[str, list[int]] = {}
    for size in config.sizes:
        per_method = {}
        for method in config.methods:
            ok = [r for r in records if r.size == size and r.method == method and r.valid]
            twts = [r.twt for r in ok]
            times = [r.wall_ms for r in records if r.size == size and r.method == method]
            per_method[method] = {
                "mean_twt": statistics.fmean(twts) if twts else None,
                "median_twt": statistics.median(twts) if twts else None,
                "mean_wall_time": statistics.fmean(times) if times else None,
                "count": len(twts),
            }
        if "hnn" in config.methods:
            hnn_mean = per_method["hnn"]["mean_twt"]
            for method in config.methods:
                stats = per_method[method]
                stats["ratio_to_hnn"] = _ratio(stats["mean_twt"], hnn_mean)
                if method == "hnn":
                    continue
                wins = total = 0
                for index in range(config.count):
                    h = by_key.get((size, index, "hnn"))
                    o = by_key.get((size, index, method))
                    if h and o and h.valid and o.valid:
                        total += 1
                        wins += h.twt < o.twt
                        pair = pair_wins.setdefault(f"hnn>{method}", [0, 0])
                        pair[0] += h.twt < o.twt
                        pair[1] += 1
                stats["win_rate_hnn"] = wins / total if total else None
        per_size.append({"n_jobs": size, "per_method": per_method})
    win_rate_vs = {k: w / t for k, (w, t) in pair_wins.items() if t}
    return BenchReport(
        per_size=per_size,
        win_rate_vs=win_rate_vs,
        instance_count=config.count * len(config.sizes),
        config_echo=config.to_dict(),
        records=records,
        warnings=warnings,
    )


def _ratio(num, den):
    if num is None or den is None:
        return None
    if den == 0:
        return 1.0 if num == 0 else float("inf")
    return num / den


def svg_chart(report: BenchReport, width: int = 640, height: int = 400) -> str:
    """Mean TWT per method against job count as a bare SVG line chart."""
    sizes = [e["n_jobs"] for e in report.per_size]
    methods = list(report.per_size[0]["per_method"]) if report.per_size else []
    values = [
        s["mean_twt"]
        for e in report.per_size
        for s in e["per_method"].values()
        if s["mean_twt"] is not None
    ]
    top = max(values, default=1.0) or 1.0
    pad = 50
    colors = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#7f7f7f"]

    def px(k):
        if len(sizes) == 1:
            return pad + (width - 2 * pad) / 2
        return pad + k * (width - 2 * pad) / (len(sizes) - 1)

    def py(v):
        return height - pad - v / top * (height - 2 * pad)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{pad}" y="{pad - 10}" font-size="12">mean TWT (max {top:.4g})</text>',
    ]
    for k, s in enumerate(sizes):
        parts.append(f'<text x="{px(k):.1f}" y="{height - pad + 16}" font-size="11">{s}</text>')
    for c, method in enumerate(methods):
        pts = [
            (px(k), py(e["per_method"][method]["mean_twt"]))
            for k, e in enumerate(report.per_size)
            if e["per_method"][method]["mean_twt"] is not None
        ]
        color = colors[c % len(colors)]
        path = " ".join(f"{x:.1f},{y:.1f}" for x, y in pts)
        parts.append(f'<polyline fill="none" stroke="{color}" points="{path}"/>')
        parts.append(
            f'<text x="{width - pad + 4}" y="{pad + 14 * c}" font-size="11" fill="{color}">{method}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
