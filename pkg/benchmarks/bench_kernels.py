"""Compare the compiled and numpy kernels on random matrices mod 10007.

    python3 benchmarks/bench_kernels.py [--sizes 64 128 256] [--repeat 3]
"""
import argparse
import timeit

import numpy as np

from coxhecke import _kernels_py

try:
    from coxhecke import _kernels
except ImportError:
    _kernels = None

P = 10007


def bench(impl, n, repeat, rng):
    A = rng.integers(0, P, size=(n, n), dtype=np.int64)
    B = rng.integers(0, P, size=(n, n), dtype=np.int64)
    C = np.empty((n, n), dtype=np.int64)
    t_rref = min(timeit.repeat(lambda: impl.rref_mod_p(A.copy(), P), number=1, repeat=repeat))
    t_mul = min(timeit.repeat(lambda: impl.matmul_mod_p(A, B, C, P), number=1, repeat=repeat))
    return t_rref, t_mul


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    impls = [("python", _kernels_py)] + ([("compiled", _kernels)] if _kernels else [])
    print(f"{'backend':>9} {'n':>5} {'rref s':>10} {'matmul s':>10}")
    for n in args.sizes:
        for name, impl in impls:
            r, m = bench(impl, n, args.repeat, np.random.default_rng(0))
            print(f"{name:>9} {n:>5} {r:>10.4f} {m:>10.4f}")


if __name__ == "__main__":
    main()
