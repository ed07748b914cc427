#!/usr/bin/env python3
"""Compare the compiled and numpy kernel backends.

Times each kernel on fixed random inputs, then an end-to-end bigraded barcode
in a subprocess per backend (the backend is chosen at import time).

    python benchmarks/bench_kernels.py --repeat 5 --points 8
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from bgph._kernels import backends
from bgph.complex import simplex


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_cases(rng, size):
    A = rng.integers(0, 3, size=(size, size)).astype(np.int64)
    K = simplex(range(10))
    hi, lo = K.faces(4), K.faces(3)
    d = rng.uniform(size=(16, 16))
    d = d + d.T
    np.fill_diagonal(d, 0)
    return {
        f"rref {size}x{size} F3": lambda impl: impl.rref(A.copy(), 3),
        f"boundary {hi.size}x{lo.size}": lambda impl: impl.boundary_matrix(hi, lo, 3),
        "subset diameters n=16": lambda impl: impl.subset_diameters(d),
    }


END_TO_END = (
    "import sys, time, numpy as np\n"
    "from bgph import BACKEND, from_points\n"
    "from bgph.persistence import phz, phhz\n"
    "X = from_points(np.random.default_rng(0).uniform(size=({n}, 2)))\n"
    "t0 = time.perf_counter(); phz(X); t1 = time.perf_counter(); phhz(X); t2 = time.perf_counter()\n"
    "print(BACKEND, t1 - t0, t2 - t1)\n"
)


def end_to_end(n, pure):
    env = dict(os.environ, BGPH_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", END_TO_END.format(n=n)], env=env,
                         capture_output=True, text=True, check=True).stdout.split()
    return out[0], float(out[1]), float(out[2])


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--size", type=int, default=200, help="side of the random rref matrix")
    parser.add_argument("--points", type=int, default=7, help="points in the end-to-end run")
    args = parser.parse_args()

    impls = backends()
    rng = np.random.default_rng(1)
    names = sorted(impls)
    print(f"{'kernel':28s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in kernel_cases(rng, args.size).items():
        times = {n: best_of(lambda: fn(impls[n]), args.repeat) for n in names}
        row = f"{label:28s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)

    print(f"\nend to end, {args.points} random points in the plane")
    for pure in (False, True):
        backend, t_phz, t_phhz = end_to_end(args.points, pure)
        print(f"  {backend:8s} phz {t_phz:7.3f}s   phhz {t_phhz:7.3f}s")


if __name__ == "__main__":
    main()
