"""Print brute-force vs hook-length invariant dimensions of tensor powers of C^n.

    python3 scripts/invariant_dims_table.py --max-n 4 --budget 20000
"""

import argparse
import time

from hyperpf.kernel import ResourceError
from hyperpf.repcheck import KernelStats, invariant_dimension_bruteforce, invariant_dimension_predicted


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--budget", type=int, default=20000)
    args = ap.parse_args()

    print(f"{'n':>2} {'m':>3} {'basis':>7} {'predicted':>9} {'brute':>6} {'seconds':>8}")
    for n in range(2, args.max_n + 1):
        m = 1
        while n ** m <= args.budget:
            stats = KernelStats()
            start = time.perf_counter()
            try:
                brute = invariant_dimension_bruteforce(n, m, budget=args.budget, stats=stats)
            except ResourceError:
                break
            elapsed = time.perf_counter() - start
            predicted = invariant_dimension_predicted(n, m)
            flag = "" if brute == predicted else "  MISMATCH"
            print(f"{n:>2} {m:>3} {stats.basis_size:>7} {predicted:>9} {brute:>6} {elapsed:>8.2f}{flag}")
            m += 1


if __name__ == "__main__":
    main()
