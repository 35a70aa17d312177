"""Timing comparison of the two numeric builds.

Runs the hot kernels from ``nkernel._kernels`` through both the numba and
the pure-numpy build on identical inputs and prints per-call times, the
speedup, and the worst relative disagreement between the builds. The
sampler is required to be bit-identical, so its diff column must print 0.

Usage: python3 benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import math
import time

import numpy as np

from nkernel._kernels import _numba_impls, _numpy_impls
from nkernel.euler_maclaurin import _GL_NODES, _GL_WTS


def _best_ms(fn, repeats):
    fn()  # warmup; compiles the numba build on first touch
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return 1e3 * best


def _rel_diff(a, b):
    fa = np.asarray(a, dtype=float).ravel()
    fb = np.asarray(b, dtype=float).ravel()
    scale = np.maximum(1.0, np.maximum(np.abs(fa), np.abs(fb)))
    return float(np.max(np.abs(fa - fb) / scale))


def _cases():
    # arguments mirror the call sites: the kernel series slope is
    # (2/alpha) ln n + ln|zeta| and the gamma argument scale is 2/alpha
    cases = []
    zeta = 0.45 * complex(math.cos(0.7), math.sin(0.7))
    lz = math.log(abs(zeta))
    ph = math.atan2(zeta.imag, zeta.real)
    for n in (200, 2000, 20000):
        s = 2.0 / 1.5
        args = (n, s * math.log(n) + lz, -lz, s, ph, -ph)
        cases.append((f"series_sum n={n}", "series_sum", args))
    for n in (200, 2000):
        args = (n, math.log(n) + math.log(0.5), 1.0, 0.3, _GL_NODES, _GL_WTS)
        cases.append((f"unit_interval_sums n={n}", "unit_interval_sums", args))
    xs = np.linspace(1.0, 2000.0, 20000)
    cases.append(("grid_logmod 20000 pts", "grid_logmod", (xs, 7.2, -lz, 1.0)))
    for n in (1000, 100000):
        args = (n, 1.5, float(n), np.uint64(42))
        cases.append((f"radii n={n}", "radii", args))
    return cases


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    opts = ap.parse_args()

    plain = _numpy_impls()
    try:
        jitted = _numba_impls()
    except ImportError:
        print("numba unavailable; nothing to compare against")
        return

    header = f"{'case':<28}{'numpy_ms':>10}{'numba_ms':>10}{'speedup':>9}  max_rel_diff"
    print(header)
    print("-" * len(header))
    for label, key, args in _cases():
        t_np = _best_ms(lambda: plain[key](*args), opts.repeats)
        t_nb = _best_ms(lambda: jitted[key](*args), opts.repeats)
        diff = _rel_diff(plain[key](*args), jitted[key](*args))
        print(
            f"{label:<28}{t_np:>10.3f}{t_nb:>10.3f}"
            f"{t_np / t_nb:>8.1f}x  {diff:.2e}"
        )


if __name__ == "__main__":
    main()
