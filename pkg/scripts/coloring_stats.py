"""Empirical check of the colorful-sampling success rate.

For a random instance with in-degree k, the witness structure occupies
k*2^k specific vertices.  Conquerors get fixed colors, so a sampled
coloring hits a given size-t remainder (t = k*2^k - k) with probability
exactly t!/t^t, and t!/t^t >= e^{-t}.  This script samples colorings and
prints the empirical fraction next to both bounds.

Usage:
    python3 scripts/coloring_stats.py --k 2 --trials 100000
"""

import argparse
import math

import numpy as np

from tfpsolve import gen_random, sample_coloring


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=2, help="in-degree of the favorite")
    ap.add_argument("--n", type=int, default=0, help="players (default: smallest power of two > k*2^k)")
    ap.add_argument("--trials", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    t_exp = args.k * 2**args.k - args.k
    n = args.n or 2 ** max((args.k * 2**args.k).bit_length(), 1)
    if args.k * 2**args.k >= n:
        raise SystemExit(f"need k*2^k < n, got {args.k * 2 ** args.k} >= {n}")

    t = gen_random(n, args.k, seed=args.seed)
    ins = sorted(t.in_neighbors)
    target = ins + [v for v in t.players if v not in t.in_neighbors][:t_exp]

    rng = np.random.default_rng(args.seed)
    hits = 0
    for _ in range(args.trials):
        col = sample_coloring(t, rng)
        if len({col.color_of[v] for v in target}) == len(target):
            hits += 1

    frac = hits / args.trials
    exact = math.factorial(t_exp) / t_exp**t_exp
    print(f"k={args.k} n={n} t={t_exp} trials={args.trials}")
    print(f"target set: {target}")
    print(f"empirical colorful fraction: {frac:.6f}")
    print(f"exact t!/t^t:                {exact:.6f}")
    print(f"lower bound e^-t:            {math.exp(-t_exp):.6f}")


if __name__ == "__main__":
    main()
