"""Time per restart and per sweep of the solver as the job count grows."""
import argparse

import numpy as np

from hnnsched.core import schedule_length
from hnnsched.hnn import SolverConfig, solve
from hnnsched.instances import GeneratorConfig, generate


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--sizes", default="10,25,50,100,200")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--seed", type=int, default=9)
    args = p.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    per_sweep = []
    # compile the kernels before timing
    solve(generate(GeneratorConfig(5, rng_seed=0)), SolverConfig(restarts=1))
    print("n_jobs  length  ms/restart  us/sweep  mean_sweeps  twt")
    for n in sizes:
        inst = generate(GeneratorConfig(n, rng_seed=args.seed))
        _, length, _ = schedule_length(inst)
        res = solve(inst, SolverConfig(restarts=args.restarts, rng_seed=args.seed))
        sweeps = sum(res.sweeps_histogram)
        per_sweep.append(res.wall_time / sweeps)
        print(f"{n:6d}  {length:6d}  {1000 * res.wall_time / args.restarts:10.2f}  "
              f"{1e6 * per_sweep[-1]:8.2f}  {sweeps / args.restarts:11.1f}  {res.twt:g}")
    if len(sizes) > 1:
        slope = np.polyfit(np.log(sizes), np.log(per_sweep), 1)[0]
        print(f"log-log slope of per-sweep time: {slope:.2f}")


if __name__ == "__main__":
    main()
