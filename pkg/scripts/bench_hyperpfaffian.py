"""Backtracking vs full-expansion timings on random sparse tensors.

    python3 scripts/bench_hyperpfaffian.py --seed 42 --trials 20
"""

import argparse
import random
import time

from hyperpf.invariants import (
    HyperpfaffianInstance, SearchStats, expansion_bound, hyperpfaffian, hyperpfaffian_expand,
)
from hyperpf.tensor import random_sparse_tensor

CASES = [(1, 4, 6), (1, 6, 10), (1, 8, 12), (2, 8, 8), (1, 10, 16), (2, 12, 12), (3, 12, 12)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--expand-limit", type=int, default=10**5, help="skip the expansion above this bound")
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print(f"{'k':>2} {'n':>3} {'entries':>7} {'backtrack_s':>11} {'nodes':>8} {'expand_s':>9} {'agree':>6}")
    for k, n, entries in CASES:
        stats = SearchStats()
        tb = te = 0.0
        agree, expanded = True, True
        for _ in range(args.trials):
            p = random_sparse_tensor(n, 2 * k, entries, rng, covering=2)
            start = time.perf_counter()
            value = hyperpfaffian(p, k, stats=stats)
            tb += time.perf_counter() - start
            if expansion_bound(HyperpfaffianInstance.of(p, k)) <= args.expand_limit:
                start = time.perf_counter()
                agree = agree and hyperpfaffian_expand(p, k) == value
                te += time.perf_counter() - start
            else:
                expanded = False
        exp = f"{te:>9.3f}" if expanded else f"{'skipped':>9}"
        print(f"{k:>2} {n:>3} {entries:>7} {tb:>11.3f} {stats.nodes:>8} {exp} {str(agree):>6}")


if __name__ == "__main__":
    main()
