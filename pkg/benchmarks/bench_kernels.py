"""Time the numba and numpy kernel backends on large batches.

    python3 benchmarks/bench_kernels.py [--n 200000] [--repeat 5]

The numba column is skipped when numba is unavailable or disabled through
BIPEDGAIT_DISABLE_NUMBA.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bipedgait import GaitParams, RobotGeometry, check_trajectory, kernels, plan_walk


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(n: int, rng: np.random.Generator):
    g = RobotGeometry()
    T, S, eps = g.thigh_len, g.shank_len, g.reach_eps
    r = rng.uniform(0.05, g.leg_len, n)
    phi = rng.uniform(-1.2, 1.2, n)
    x, y = r * np.sin(phi), r * np.cos(phi)
    hip, knee = rng.uniform(-1, 1, n), rng.uniform(0, 2, n)
    m = max(n // 10, 1)
    verts = np.zeros((m, 8, 2))
    nverts = rng.integers(3, 9, m)
    for i in range(m):
        ang = np.sort(rng.uniform(0, 2 * np.pi, nverts[i]))
        verts[i, :nverts[i]] = np.c_[np.cos(ang), np.sin(ang)]
    pts = rng.uniform(-1.5, 1.5, (m, 2))
    return {
        f"ik_sagittal ({n})": lambda b: kernels.ik_sagittal(x, y, T, S, eps, backend=b),
        f"fk_sagittal ({n})": lambda b: kernels.fk_sagittal(hip, knee, T, S, backend=b),
        f"polygon_margins ({m})": lambda b: kernels.polygon_margins(pts, verts, nverts, backend=b),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    rng = np.random.default_rng(0)
    print(f"{'kernel':<26}" + "".join(f"{b:>12}" for b in backends) + "     speed-up")
    for name, fn in workloads(args.n, rng).items():
        for b in backends:
            fn(b)  # compile / warm caches
        t = {b: best_of(lambda: fn(b), args.repeat) for b in backends}
        row = f"{name:<26}" + "".join(f"{t[b] * 1e3:>10.2f}ms" for b in backends)
        if "numba" in t:
            row += f"  {t['numpy'] / t['numba']:>10.1f}x"
        print(row)

    g = RobotGeometry()
    t0 = time.perf_counter()
    traj = plan_walk(GaitParams(n_steps=6), g)
    t1 = time.perf_counter()
    rep = check_trajectory(traj, g)
    t2 = time.perf_counter()
    print(f"\nend to end ({kernels.BACKEND}): 6-step plan {1e3 * (t1 - t0):.1f} ms, "
          f"check {1e3 * (t2 - t1):.1f} ms ({len(traj)} samples, min margin {rep.min_margin:.4f} m)")


if __name__ == "__main__":
    main()
