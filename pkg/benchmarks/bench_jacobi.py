"""Compiled vs pure-Python Jacobi eigensolver timings.

    python3 benchmarks/bench_jacobi.py [--sizes 4,8,16,32,64] [--repeat 5]

numpy.linalg.eigh is listed as a reference point only.
"""

import argparse
import time

import numpy as np

from grassframe import _jacobi_py
from grassframe.matkernel import MAX_SWEEPS, OFF_DIAGONAL_TOL

try:
    from grassframe import _jacobi
except ImportError:  # extension not built
    _jacobi = None


def random_hermitian(rng, n):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return x + x.conj().T


def best_of(fn, a, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(a)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="4,8,16,32,64")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    kernels = [("python", _jacobi_py.jacobi_hermitian)]
    if _jacobi is not None:
        kernels.insert(0, ("cython", _jacobi.jacobi_hermitian))
    else:
        print("compiled extension not available; timing the fallback only")

    header = f"{'n':>4} " + " ".join(f"{name + ' ms':>12}" for name, _ in kernels) + f" {'eigh ms':>10} {'speedup':>8}"
    print(header)
    for n in (int(s) for s in args.sizes.split(",")):
        a = random_hermitian(rng, n)
        row = []
        for _, fn in kernels:
            row.append(best_of(lambda m: fn(m, MAX_SWEEPS, OFF_DIAGONAL_TOL), a, args.repeat))
        ref = best_of(np.linalg.eigh, a, args.repeat)
        speed = row[-1] / row[0] if len(row) > 1 else float("nan")
        print(f"{n:>4} " + " ".join(f"{t * 1e3:>12.3f}" for t in row) + f" {ref * 1e3:>10.3f} {speed:>7.1f}x")


if __name__ == "__main__":
    main()
