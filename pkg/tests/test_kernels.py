import os
import subprocess
import sys

import numpy as np
import pytest

from bipedgait import kernels

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba backend not active")


@needs_numba
def test_fk_backends_agree(rng):
    hip = rng.uniform(-1.5, 1.5, 5000)
    knee = rng.uniform(0.0, np.pi, 5000)
    a = kernels.fk_sagittal(hip, knee, 0.12, 0.1, backend="numba")
    b = kernels.fk_sagittal(hip, knee, 0.12, 0.1, backend="numpy")
    for u, v in zip(a, b):
        assert np.max(np.abs(u - v)) < 1e-12


@needs_numba
def test_ik_backends_agree(rng):
    r = rng.uniform(0.0, 0.25, 5000)
    phi = rng.uniform(-np.pi, np.pi, 5000)
    x, y = r * np.sin(phi), r * np.cos(phi)
    x[:3], y[:3] = 0.0, [0.0, 0.22, 0.02]  # degenerate, full extension, inner radius
    a = kernels.ik_sagittal(x, y, 0.12, 0.1, 2.2e-10, backend="numba")
    b = kernels.ik_sagittal(x, y, 0.12, 0.1, 2.2e-10, backend="numpy")
    assert np.array_equal(a[-1], b[-1])
    ok = a[-1] == kernels.IK_OK
    for u, v in zip(a[:-1], b[:-1]):
        assert np.max(np.abs(u[ok] - v[ok])) < 1e-12


@needs_numba
def test_margin_backends_agree(rng):
    n = 2000
    verts = np.zeros((n, 8, 2))
    nverts = rng.integers(3, 9, n)
    for i in range(n):
        ang = np.sort(rng.uniform(0, 2 * np.pi, nverts[i]))
        verts[i, :nverts[i]] = np.c_[np.cos(ang), np.sin(ang)]
    pts = rng.uniform(-1.5, 1.5, (n, 2))
    a = kernels.polygon_margins(pts, verts, nverts, backend="numba")
    b = kernels.polygon_margins(pts, verts, nverts, backend="numpy")
    assert np.max(np.abs(a - b)) < 1e-12


def test_ik_status_codes():
    _, _, _, _, _, _, st = kernels.ik_sagittal([0.0, 0.0, 0.0, 0.0], [0.0, 0.1, 0.3, 0.01],
                                               0.12, 0.1, 2.2e-10)
    assert st.tolist() == [kernels.IK_DEGENERATE, kernels.IK_OK, kernels.IK_UNREACHABLE,
                           kernels.IK_UNREACHABLE]


def test_env_flag_forces_numpy():
    env = dict(os.environ, BIPEDGAIT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "import bipedgait; print(bipedgait.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
