"""Compare the product-form braided factorial with the pairing-recursion oracle.

    python scripts/oracle_equivalence.py --max-N 4 --max-n 3
"""

import argparse
import random
import time

from ybserre.braided import braided_factorial, pairing_gram_oracle
from ybserre.rmatrix import CATALOG_NAMES, RMatrix, braid_from_r, catalog, diagonal_r
from ybserre.scalars import Scalar


def random_param(rng):
    while True:
        num = [rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]
        den = [rng.randint(-3, 3) for _ in range(rng.randint(1, 2))]
        if any(num) and any(den):
            return Scalar(num, den)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-N", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    cases = []
    for n in range(2, args.max_n + 1):
        for name in CATALOG_NAMES:
            cases.append((f"{name}/{n}", catalog(name, n)))
        grid = [[random_param(rng) for _ in range(n)] for _ in range(n)]
        cases.append((f"diagonal-random/{n}", RMatrix.validated(diagonal_r(grid))))

    bad = 0
    for label, R in cases:
        B = braid_from_r(R)
        for N in range(1, args.max_N + 1):
            t0 = time.perf_counter()
            ok = pairing_gram_oracle(B, N) == braided_factorial(B, N).matrix
            dt = time.perf_counter() - t0
            bad += not ok
            print(f"{label:26s} N={N}  {'match' if ok else 'MISMATCH'}  {dt:6.2f}s")
    print(f"{bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
