"""Compare the compiled and pure-Python modular elimination kernels.

    python3 benchmarks/bench_kernels.py [--sizes 40,80,160] [--repeat 3]

Also times one end-to-end workload (Betti numbers over F_2 of the twelve
point ordinal-sum fixture) with each backend forced in turn.
"""

import argparse
import random
import timeit

from posetderived import _kernels_py, kernels
from posetderived.fields import GF
from posetderived.homology import betti
from posetderived.poset import fig1_left, random_poset

try:
    from posetderived import _kernels as compiled
except ImportError:
    compiled = None


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="40,80,160")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--prime", type=int, default=10007)
    args = ap.parse_args()
    p = args.prime
    rnd = random.Random(0)
    print(f"compiled kernels available: {compiled is not None} (dispatch uses {kernels.BACKEND})")
    print(f"{'n':>5} {'python rref':>12} {'compiled rref':>14} {'speedup':>8}")
    for n in map(int, args.sizes.split(",")):
        A = [[rnd.randrange(p) for _ in range(n)] for _ in range(n)]
        t_py = best(lambda: _kernels_py.rref_mod_p(A, n, p), args.repeat)
        if compiled is None:
            print(f"{n:>5} {t_py:>11.4f}s {'-':>14} {'-':>8}")
            continue
        assert compiled.rref_mod_p(A, n, p) == _kernels_py.rref_mod_p(A, n, p)
        t_c = best(lambda: compiled.rref_mod_p(A, n, p), args.repeat)
        print(f"{n:>5} {t_py:>11.4f}s {t_c:>13.4f}s {t_py / t_c:>7.1f}x")

    workloads = [("betti F2, 12-point fixture", fig1_left()),
                 ("betti F2, random 14-point poset", random_poset(14, 0.5, 1))]
    # the dispatcher falls back to pure Python when no compiled module is set
    saved = kernels._compiled
    try:
        for title, X in workloads:
            kernels._compiled = None
            t_py = best(lambda: betti(X, GF(2)), args.repeat)
            line = f"{title}: python {t_py:.4f}s"
            if compiled is not None:
                kernels._compiled = compiled
                t_c = best(lambda: betti(X, GF(2)), args.repeat)
                line += f", compiled {t_c:.4f}s ({t_py / t_c:.1f}x)"
            print(line)
    finally:
        kernels._compiled = saved


if __name__ == "__main__":
    main()
