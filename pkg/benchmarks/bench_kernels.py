"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Kernel timings import both backends directly.  The end-to-end sliced Mahler
timing runs a child interpreter per backend, with APML_PURE=1 forcing the
fallback, so the selection logic at import is exercised as well.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from apml.numerics import _pykernels

try:
    from apml.numerics import _ckernels
except ImportError:
    _ckernels = None

SLICED = (
    "import time; from apml.mahler import mahler_bivariate_sliced; from apml.polycore import H_FIG8;"
    "from apml.numerics import BACKEND; t = time.perf_counter();"
    "mahler_bivariate_sliced(H_FIG8, tol=1e-9); print(BACKEND, time.perf_counter() - t)"
)


def cases():
    rng = np.random.default_rng(0)
    zs = [complex(*rng.uniform(-3, 3, 2)) for _ in range(2000)]
    polys = [list(rng.normal(size=9) + 1j * rng.normal(size=9)) for _ in range(200)]
    table = np.array([[1, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=float)  # 1 + x + y
    return {
        "li2 x2000": lambda k: [k.li2(z) for z in zs],
        "bloch_wigner x2000": lambda k: [k.bloch_wigner(z) for z in zs],
        "aberth deg 8 x200": lambda k: [k.aberth(c, 1e-12, 200) for c in polys],
        "grid_logmean N=1024": lambda k: k.grid_logmean(table, 1024),
    }


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def sliced(pure: bool) -> float:
    env = dict(os.environ, APML_PURE="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", SLICED], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.split()[1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the fallback is available")
        return 1
    print(f"{'kernel':<24}{'cython (s)':>12}{'python (s)':>12}{'speedup':>10}")
    for name, fn in cases().items():
        c = best(lambda: fn(_ckernels), args.repeat)
        p = best(lambda: fn(_pykernels), args.repeat)
        print(f"{name:<24}{c:>12.4f}{p:>12.4f}{p / c:>10.1f}")
    c, p = sliced(False), sliced(True)
    print(f"{'sliced m(H), tol 1e-9':<24}{c:>12.4f}{p:>12.4f}{p / c:>10.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
