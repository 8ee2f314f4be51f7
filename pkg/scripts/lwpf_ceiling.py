"""How often can any method strictly beat LWPF on a generated batch?

With one machine the best job sequence is optimal, so enumerating
permutations gives the exact optimum for small sizes.  For wider instances
the script only counts batches where LWPF is already tardiness free.
"""
import argparse
import itertools

from hnnsched.baselines import JobOrdering, list_schedule, run_baseline
from hnnsched.core import total_weighted_tardiness
from hnnsched.instances import GeneratorConfig, generate_batch


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--size", type=int, default=5)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=2024)
    args = p.parse_args()

    batch = generate_batch(GeneratorConfig(args.size, rng_seed=args.seed), args.count)
    optimal = zero = 0
    for inst in batch:
        lwpf = run_baseline(inst, "lwpf")[1]
        zero += lwpf == 0
        if inst.capacity == 1 and inst.n_jobs <= 8:
            best = min(
                total_weighted_tardiness(inst, list_schedule(inst, JobOrdering(q, "exact")))
                for q in itertools.permutations(range(inst.n_jobs))
            )
            optimal += best == lwpf
    print(f"size {args.size}: LWPF tardiness free on {zero}/{args.count}")
    if batch[0].capacity == 1:
        print(f"LWPF exactly optimal on {optimal}/{args.count}; "
              f"strict-win ceiling {1 - optimal / args.count:.0%}")


if __name__ == "__main__":
    main()
