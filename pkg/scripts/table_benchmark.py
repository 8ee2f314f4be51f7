"""Reproduce the mean-TWT comparison table across problem sizes.

    python3 scripts/table_benchmark.py --sizes 5,10,20 --count 100 --out results/table
"""
import argparse
import json
from pathlib import Path

from hnnsched.bench import DEFAULT_SIZES, BenchConfig, run_bench, svg_chart
from hnnsched.hnn import SolverConfig


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", default=",".join(map(str, DEFAULT_SIZES)))
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--restarts", type=int, default=1000)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", type=Path, default=Path("results/table"))
    args = p.parse_args()

    cfg = BenchConfig(
        sizes=tuple(int(s) for s in args.sizes.split(",")),
        count=args.count,
        seed=args.seed,
        solver=SolverConfig(restarts=args.restarts),
        threads=args.threads,
    )
    report = run_bench(cfg)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "report.json").write_text(json.dumps(report.to_dict(), indent=2))
    (args.out / "report.csv").write_text(report.to_csv())
    (args.out / "chart.svg").write_text(svg_chart(report))
    print(report.to_csv())
    for w in report.warnings:
        print("warning:", w)


if __name__ == "__main__":
    main()
