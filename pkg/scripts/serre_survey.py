"""Tabulate kernel dimensions and new relators of the braided factorials.

    python scripts/serre_survey.py --max-N 4
"""

import argparse

from ybserre.braided import braided_factorial
from ybserre.linalg import ExactMatrix, rank
from ybserre.rmatrix import RMatrix, catalog
from ybserre.serre import kernel_bases, new_relators


def surveyed(max_n):
    yield "R=[[-1]]", RMatrix.validated(ExactMatrix.from_rows([[-1]]))
    yield "R=[[q]]", catalog("diagonal", 1)
    for n in range(2, max_n + 1):
        for name in ("identity", "flip", "sln_standard", "sln_quantum_plane"):
            yield f"{name}/{n}", catalog(name, n)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-N", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=2)
    args = ap.parse_args()
    for label, R in surveyed(args.max_n):
        K = kernel_bases(R, args.max_N)
        print(f"== {label}")
        for N in range(2, args.max_N + 1):
            M = braided_factorial(R.braid(), N).matrix
            new = new_relators(R, N, K)
            print(f"  N={N}  rank {rank(M):4d}  kernel {len(K[N]):4d}  new {len(new)}")
            for r in new:
                print(f"      {r.render()} = 0")


if __name__ == "__main__":
    main()
