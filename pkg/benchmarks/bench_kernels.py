"""Compare the compiled kernels with the NumPy fallback.

Run with ``python benchmarks/bench_kernels.py [--repeat R]``. Each kernel is
called on identical inputs through both backends; the script prints the best
wall time per call, the speed-up and the largest relative disagreement.
"""

from __future__ import annotations

import argparse
import math
import timeit

import numpy as np

from smoothness_lab import _kernels_py as py

try:
    from smoothness_lab import _kernels as cy
except ImportError:  # extension not built
    cy = None


def cases(rng):
    rows = rng.normal(size=(64, 4096))
    r = rng.normal(size=8192)
    G = 8192
    v = np.sin(7 * np.arange(G + 1) / G) + 0.01 * rng.normal(size=G + 1)
    shifts = np.arange(1, 1024, 16, dtype=np.int64)
    out = []
    for p in (1.0, 2.0, 3.0, 2.5, math.inf):
        out.append((f"row_lp_norms p={p:g}", "row_lp_norms", (rows, p)))
    for p in (1.5, 4.0):
        out.append((f"residual_terms p={p:g}", "residual_terms", (r, p, 1e-12)))
    for p in (2.0, 4.0, 2.5, math.inf):
        out.append((f"shifted_difference_norms p={p:g}", "shifted_difference_norms",
                    (v, shifts, 3, p, 1 / G)))
    return out


def _max_rel(a, b) -> float:
    a = a if isinstance(a, tuple) else (a,)
    b = b if isinstance(b, tuple) else (b,)
    worst = 0.0
    for x, y in zip(a, b):
        x, y = np.atleast_1d(x), np.atleast_1d(y)
        worst = max(worst, float(np.max(np.abs(x - y) / np.maximum(np.abs(y), 1e-300))))
    return worst


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    if cy is None:
        print("compiled extension not available; only the fallback is timed")
    print(f"{'kernel':32s} {'numpy ms':>10s} {'cython ms':>10s} {'speed-up':>9s} {'max rel diff':>13s}")
    for label, name, params in cases(rng):
        t_py = min(timeit.repeat(lambda: getattr(py, name)(*params), number=1,
                                 repeat=args.repeat)) * 1e3
        if cy is None:
            print(f"{label:32s} {t_py:10.3f}")
            continue
        t_cy = min(timeit.repeat(lambda: getattr(cy, name)(*params), number=1,
                                 repeat=args.repeat)) * 1e3
        diff = _max_rel(getattr(cy, name)(*params), getattr(py, name)(*params))
        print(f"{label:32s} {t_py:10.3f} {t_cy:10.3f} {t_py / t_cy:9.2f} {diff:13.2e}")


if __name__ == "__main__":
    main()
