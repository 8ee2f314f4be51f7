"""Command line: gen, solve, bench, validate, oracle."""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import fields, replace
from pathlib import Path

from .baselines import RULES
from .bench import METHODS, BenchConfig, resolve_threads, run_bench, run_method, svg_chart
from .core import FormatError, dump_json, load_instance, load_schedule, validate
from .hnn import SolverConfig
from .instances import RNG_NAME, GeneratorConfig, generate, instance_seed
from .oracle import OracleLimitError, solve_exact

EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3

log = logging.getLogger("hnnsched")


def _global_flags(parser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS if suppress else 0)
    parser.add_argument("--threads", type=int, default=default)
    parser.add_argument("--out", default=default)
    parser.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS if suppress else "json")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _solver_flags(p) -> None:
    p.add_argument("--config", help="JSON file with solver settings")
    p.add_argument("--restarts", type=int)
    p.add_argument("--alpha0", type=float)
    p.add_argument("--alpha-step", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--error-tolerance", type=int, dest="error_tolerance_e")
    p.add_argument("--max-sweeps", type=int)
    p.add_argument("--max-alpha-iters", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hnnsched", description=__doc__)
    _global_flags(parser, suppress=False)
    parser.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write random instance files")
    p.add_argument("--jobs", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--c1", type=int, default=10)
    p.add_argument("--c2", type=int, default=5)
    p.add_argument("--capacity-ratio", type=float, default=0.25)

    p = sub.add_parser("solve", parents=[common], help="schedule one instance file")
    p.add_argument("instance")
    p.add_argument("--method", choices=METHODS + ("oracle",), default="hnn")
    p.add_argument("--random-repeats", type=int, default=1000)
    p.add_argument("--horizon", type=int)
    _solver_flags(p)

    p = sub.add_parser("bench", parents=[common], help="run the benchmark protocol")
    p.add_argument("--sizes", type=_int_list, default=None)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--methods", default=",".join(METHODS))
    p.add_argument("--random-repeats", type=int, default=1000)
    p.add_argument("--svg", action="store_true", help="also write a line chart of mean TWT")
    p.add_argument("--no-time", action="store_true", help="omit wall-time columns from the CSV")
    _solver_flags(p)

    p = sub.add_parser("validate", parents=[common], help="check a schedule against an instance")
    p.add_argument("instance")
    p.add_argument("schedule")

    p = sub.add_parser("oracle", parents=[common], help="exact optimum for a small instance")
    p.add_argument("instance")
    p.add_argument("--horizon", type=int)
    return parser


def solver_config(args) -> SolverConfig:
    cfg = SolverConfig(rng_seed=args.seed)
    if args.config:
        data = json.loads(Path(args.config).read_text(encoding="utf-8"))
        known = {f.name for f in fields(SolverConfig)}
        bad = set(data) - known
        if bad:
            raise FormatError(f"unknown solver settings: {sorted(bad)}")
        cfg = replace(cfg, **data)
    overrides = {
        name: getattr(args, name)
        for name in (
            "restarts",
            "alpha0",
            "alpha_step",
            "beta",
            "gamma",
            "error_tolerance_e",
            "max_sweeps",
            "max_alpha_iters",
        )
        if getattr(args, name, None) is not None
    }
    return replace(cfg, **overrides)


def cmd_gen(args) -> int:
    if args.count < 1 or args.jobs < 1:
        log.error("--jobs and --count must be >= 1")
        return EXIT_USAGE
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    manifest = {"format_version": 1, "rng": RNG_NAME, "base_seed": args.seed, "instances": []}
    for k in range(args.count):
        seed = instance_seed(args.seed, k)
        cfg = GeneratorConfig(args.jobs, args.c1, args.c2, args.capacity_ratio, seed)
        name = f"instance_{args.jobs}_{k:04d}.json"
        dump_json(generate(cfg).to_dict(), out / name)
        manifest["instances"].append({"file": name, "n_jobs": args.jobs, "seed": seed})
    dump_json(manifest, out / "manifest.json")
    print(f"wrote {args.count} instances to {out}")
    return 0


def cmd_solve(args) -> int:
    instance = load_instance(args.instance)
    config = solver_config(args)
    start = time.perf_counter()
    if args.method == "oracle":
        res = solve_exact(instance, args.horizon)
        sched, twt = res.schedule, res.optimum_twt
        extra = {"nodes_explored": res.nodes_explored}
        cfg_echo = {"horizon": args.horizon}
    else:
        bench_cfg = BenchConfig(
            methods=(args.method,), random_repeats=args.random_repeats, solver=config
        )
        sched, twt = run_method(instance, args.method, args.seed, bench_cfg)
        extra = {}
        cfg_echo = config.to_dict() if args.method == "hnn" else {"seed": args.seed}
        if args.method == "random":
            cfg_echo["repeats"] = args.random_repeats
    wall = time.perf_counter() - start
    result = {
        "method": args.method,
        "twt": twt,
        "schedule": sched.to_dict(),
        "wall_time": wall,
        "config": cfg_echo,
        **extra,
    }
    out = Path(args.out) if args.out else Path(args.instance).with_suffix(f".{args.method}.json")
    dump_json(result, out)
    print(f"{twt:g}")
    return 0


def cmd_oracle(args) -> int:
    args.method = "oracle"
    for name in ("config", "restarts", "alpha0", "alpha_step", "beta", "gamma",
                 "error_tolerance_e", "max_sweeps", "max_alpha_iters"):
        setattr(args, name, None)
    args.random_repeats = 1
    return cmd_solve(args)


def cmd_bench(args) -> int:
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    config = BenchConfig(
        sizes=args.sizes or BenchConfig.sizes,
        count=args.count,
        methods=methods,
        seed=args.seed,
        random_repeats=args.random_repeats,
        solver=solver_config(args),
        threads=resolve_threads(args.threads),
    )
    report = run_bench(config)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    dump_json(report.to_dict(), out / "report.json")
    csv_text = report.to_csv(include_time=not args.no_time)
    (out / "report.csv").write_text(csv_text, encoding="utf-8")
    if args.svg:
        (out / "report.svg").write_text(svg_chart(report), encoding="utf-8")
    if args.format == "csv":
        sys.stdout.write(csv_text)
    else:
        print(json.dumps({k: v for k, v in report.to_dict().items() if k != "records"}, indent=2))
    if report.warnings:
        print(f"warnings: {len(report.warnings)} (see report.json)", file=sys.stderr)
    return 0


def cmd_validate(args) -> int:
    instance = load_instance(args.instance)
    schedule = load_schedule(args.schedule)
    if schedule.n_jobs != instance.n_jobs:
        raise FormatError(
            f"schedule has {schedule.n_jobs} rows, instance has {instance.n_jobs} jobs"
        )
    diag = validate(instance, schedule)
    report = {
        "error_count": diag.error_count,
        "row_errors": list(diag.row_errors),
        "column_overloads": list(diag.column_overloads),
    }
    if args.format == "json":
        print(json.dumps(report))
    else:
        print(f"error_count {diag.error_count}")
    for i, e in enumerate(diag.row_errors):
        if e:
            print(f"job {i + 1}: {'+' if e > 0 else ''}{e} units vs size", file=sys.stderr)
    for j, o in enumerate(diag.column_overloads):
        if o:
            print(f"slot {j + 1}: over capacity by {o}", file=sys.stderr)
    return 0 if diag.error_count == 0 else EXIT_INVALID


COMMANDS = {
    "gen": cmd_gen,
    "solve": cmd_solve,
    "bench": cmd_bench,
    "validate": cmd_validate,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except OracleLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (FormatError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
