"""Compare the compiled and numpy elimination kernels on the moving-curve workload.

    python3 benchmarks/bench_elimination.py [--repeat N]

Times one full moving-curve check per preset, plus the raw F_p and dual-number
eliminations on the c3 condition matrix, for each available backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from stablemaps.movcurve import _backend, condition_matrix, draw_points, preset
from stablemaps.movcurve import pipeline


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = ["python"]
    try:
        _backend.kernels("cython")
        backends.append("cython")
    except ImportError:
        print("compiled kernels unavailable; timing numpy only")

    cfg = preset("c3")
    pts = draw_points(12, 2, cfg.p, np.random.default_rng(0))
    M0, M1 = condition_matrix(cfg.a, cfg.b, pts, cfg.p, deform=0)

    rows = []
    for name in backends:
        rref, dual_rref, _ = _backend.kernels(name)
        t_rref = _time(lambda: [rref(M0.copy(), cfg.p) for _ in range(100)], args.repeat) / 100
        t_dual = _time(lambda: [dual_rref(M0.copy(), M1.copy(), cfg.p) for _ in range(100)], args.repeat) / 100
        # swap the active kernels for a whole check
        saved = (_backend.rref_modp, _backend.dual_rref_modp, _backend.det_modp, _backend.BACKEND)
        _backend.rref_modp, _backend.dual_rref_modp, _backend.det_modp = _backend.kernels(name)
        _backend.BACKEND = name
        try:
            t_c3 = _time(lambda: pipeline.moving_curve_check(preset("c3")), args.repeat)
            t_c2 = _time(lambda: pipeline.moving_curve_check(preset("c2")), args.repeat)
        finally:
            _backend.rref_modp, _backend.dual_rref_modp, _backend.det_modp, _backend.BACKEND = saved
        rows.append((name, t_rref * 1e6, t_dual * 1e6, t_c3 * 1e3, t_c2 * 1e3))

    print(f"{'backend':8}  {'rref 36x40 (us)':>16}  {'dual rref (us)':>15}  {'c3 check (ms)':>14}  {'c2 check (ms)':>14}")
    for r in rows:
        print(f"{r[0]:8}  {r[1]:16.1f}  {r[2]:15.1f}  {r[3]:14.1f}  {r[4]:14.1f}")
    if len(rows) == 2:
        print(f"speedup on c3 check: {rows[0][3] / rows[1][3]:.1f}x")


if __name__ == "__main__":
    main()
