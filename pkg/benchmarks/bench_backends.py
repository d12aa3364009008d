"""Benchmark the numba kernels against the pure-numpy fallback.

Run: python benchmarks/bench_backends.py [npoints]
Set PENTAMOD_BACKEND to pin a backend for the whole process; this script
instead calls both implementations directly so one run compares them.
"""

from __future__ import annotations

import sys
import time

import numpy as np

from pentamod import _kernels


def _time(fn, *args, warmup=1, runs=5):
    for _ in range(warmup):
        fn(*args)
    best = float("inf")
    for _ in range(runs):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    npts = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
    if not _kernels.HAS_NUMBA:
        print("numba not available; only the numpy path can run")
    pts = _kernels.sample_sphere(npts, 42)
    tol = 1e-9
    print(f"{npts} points per call, best of 5 after warmup\n")
    print(f"{'kernel':<22}{'n':>3}{'numpy':>12}{'numba':>12}{'speedup':>10}")
    for n in (3, 4, 5):
        packed = _kernels._pack(n)
        FA, FB, normals, verts, scal, A, B, C, RA, RB = packed

        t_np = _time(_kernels._membership_np, pts, FA, FB, normals, verts, scal, tol)
        if _kernels.HAS_NUMBA:
            out = np.empty(npts, dtype=np.bool_)
            t_nb = _time(_kernels._membership_nb, pts, FA, FB, normals, verts, scal, tol, out)
            ok = np.array_equal(out, _kernels._membership_np(pts, FA, FB, normals, verts, scal, tol))
            print(f"{'membership':<22}{n:>3}{t_np:>11.4f}s{t_nb:>11.4f}s{t_np / t_nb:>9.1f}x"
                  + ("" if ok else "  RESULTS DIFFER"))
        else:
            print(f"{'membership':<22}{n:>3}{t_np:>11.4f}s{'-':>12}{'-':>10}")

        t_np = _time(_kernels._oracle_np, pts, A, B, C, RA, RB, tol)
        if _kernels.HAS_NUMBA:
            out = np.empty(npts, dtype=np.bool_)
            t_nb = _time(_kernels._oracle_nb, pts, A, B, C, RA, RB, tol, out)
            ok = np.array_equal(out, _kernels._oracle_np(pts, A, B, C, RA, RB, tol))
            print(f"{'simplicity oracle':<22}{n:>3}{t_np:>11.4f}s{t_nb:>11.4f}s{t_np / t_nb:>9.1f}x"
                  + ("" if ok else "  RESULTS DIFFER"))
        else:
            print(f"{'simplicity oracle':<22}{n:>3}{t_np:>11.4f}s{'-':>12}{'-':>10}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
