"""Symbolic projection sweep: hyperpfaffian at the projection tensor vs d! per_d / d! det_d.

    python3 scripts/projection_sweep.py --max-k 4 --max-d 4
"""

import argparse
import time

from hyperpf.invariants import SearchStats
from hyperpf.poly import scaled_reference
from hyperpf.projection import symbolic_hyperpfaffian


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-k", type=int, default=4)
    ap.add_argument("--max-d", type=int, default=4)
    ap.add_argument("--force", action="store_true", help="allow d > 4")
    args = ap.parse_args()

    print(f"{'k':>2} {'d':>2} {'target':>11} {'terms':>6} {'nodes':>8} {'equal':>6} {'seconds':>8}")
    for k in range(1, args.max_k + 1):
        for d in range(1, args.max_d + 1):
            stats = SearchStats()
            start = time.perf_counter()
            lhs = symbolic_hyperpfaffian(k, d, force=args.force, stats=stats)
            elapsed = time.perf_counter() - start
            target = "determinant" if k % 2 else "permanent"
            equal = lhs == scaled_reference(d, odd=bool(k % 2))
            print(f"{k:>2} {d:>2} {target:>11} {len(lhs.terms):>6} {stats.nodes:>8} {str(equal):>6} {elapsed:>8.3f}")


if __name__ == "__main__":
    main()
