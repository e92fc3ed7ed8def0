"""Time the compiled and pure-Python ``rref_modp`` kernels on random matrices.

    python3 bench/bench_kernels.py [--sizes 20 60 120] [--prime 32003] [--repeat 3]
"""
import argparse
import timeit

import numpy as np

from skewtaylor import _kernels_py

try:
    from skewtaylor import _kernels
except ImportError:
    _kernels = None


def bench(fn, A, p, repeat):
    return min(timeit.repeat(lambda: fn(A.copy(), p), number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[20, 60, 120])
    ap.add_argument("--prime", type=int, default=32003)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    if _kernels is None:
        print("compiled extension not built; timing the Python kernel only")
    print(f"{'size':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n in args.sizes:
        A = rng.integers(0, args.prime, size=(n, n), dtype=np.int64)
        t_py = bench(_kernels_py.rref_modp, A, args.prime, args.repeat)
        if _kernels is None:
            print(f"{n:>6} {t_py:>10.4f} {'-':>10} {'-':>8}")
            continue
        r1 = _kernels_py.rref_modp(A.copy(), args.prime)[0]
        r2 = _kernels.rref_modp(A.copy(), args.prime)[0]
        assert r1 == r2, "backends disagree on rank"
        t_cy = bench(_kernels.rref_modp, A, args.prime, args.repeat)
        print(f"{n:>6} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
