"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Times the two kernels in isolation and one full exact feasibility solve with
each backend swapped in.  Prints one line per case with the speedup.
"""

import argparse
import random
import time
from fractions import Fraction

from pathmetric import _kernels_py
from pathmetric.delta import metric_template
from pathmetric.groups import petersen_system
from pathmetric.linarith import simplex

try:
    from pathmetric import _kernels
except ImportError:  # extension not built
    _kernels = None


def random_tableau(rng, m, k):
    rows = [[rng.randint(-3, 3) if rng.random() < 0.3 else 0 for _ in range(k)] for _ in range(m)]
    for i, row in enumerate(rows):
        row[i % k] = row[i % k] or 1
    return rows, [1] * m


def bench_pivots(impl, seed, m=300, k=40, steps=200):
    rng = random.Random(seed)
    rows, dens = random_tableau(rng, m, k)
    start = time.perf_counter()
    for _ in range(steps):
        r = rng.randrange(m)
        nz = [j for j, a in enumerate(rows[r]) if a]
        if nz:
            impl.pivot_tableau(rows, dens, r, rng.choice(nz))
    return time.perf_counter() - start


def bench_bfs(impl, n=100_003, gens=(1, -1, 317, -317, 4093, -4093)):
    start = time.perf_counter()
    impl.cyclic_bfs(n, list(gens))
    return time.perf_counter() - start


def bench_solve(impl):
    sys_ = metric_template(petersen_system()).at(1 + Fraction(1, 2 ** 20))
    saved = simplex.pivot_tableau
    simplex.pivot_tableau = impl.pivot_tableau
    try:
        start = time.perf_counter()
        simplex.feasible(sys_)
        return time.perf_counter() - start
    finally:
        simplex.pivot_tableau = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels are not built; only the Python backend is available")
    cases = [("pivot_tableau 300x40, 200 pivots", lambda impl: bench_pivots(impl, 0)),
             ("cyclic_bfs n=100003, |X|=6", bench_bfs),
             ("feasible(Petersen LP at t=1+2^-20)", bench_solve)]
    for name, fn in cases:
        py = min(fn(_kernels_py) for _ in range(args.repeat))
        if _kernels is None:
            print(f"{name:40s} python {py:8.4f}s")
            continue
        cy = min(fn(_kernels) for _ in range(args.repeat))
        print(f"{name:40s} python {py:8.4f}s  cython {cy:8.4f}s  speedup {py / cy:5.2f}x")


if __name__ == "__main__":
    main()
