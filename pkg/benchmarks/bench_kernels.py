"""Time the compiled kernels against the NumPy fallback.

Usage: ``python3 benchmarks/bench_kernels.py [--sizes 1e3,1e5,1e6] [--repeat 5]``
"""

import argparse
import timeit

import numpy as np

from hardylab import _pykernels

try:
    from hardylab import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def cases(n, rng):
    desc = np.ascontiguousarray(np.sort(rng.exponential(size=n))[::-1])
    z = np.ascontiguousarray(rng.normal(size=n) + 1j * rng.normal(size=n))
    acc = np.zeros(n)
    return {
        "lorentz_step_sum": lambda mod: mod.lorentz_step_sum(desc, 0.01, 1.5, 0.7),
        "lorentz_step_sup": lambda mod: mod.lorentz_step_sup(desc, 0.01, 1.5),
        "running_max_abs": lambda mod: mod.running_max_abs(acc, z),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1e3,1e5,1e6")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not available; only the fallback can be timed")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<18} {'n':>9} {'numpy [ms]':>11} {'cython [ms]':>12} {'speedup':>8}")
    for n in (int(float(x)) for x in args.sizes.split(",")):
        for name, run in cases(n, rng).items():
            t_py = min(timeit.repeat(lambda: run(_pykernels), number=1, repeat=args.repeat)) * 1e3
            if _ckernels is None:
                print(f"{name:<18} {n:>9} {t_py:>11.3f} {'-':>12} {'-':>8}")
                continue
            t_c = min(timeit.repeat(lambda: run(_ckernels), number=1, repeat=args.repeat)) * 1e3
            print(f"{name:<18} {n:>9} {t_py:>11.3f} {t_c:>12.3f} {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
