"""Batched numeric kernels with a numba path and a pure-numpy path.

Every kernel exists twice: ``_nb_*`` is a scalar loop compiled with
``numba.njit`` and ``_np_*`` is the vectorised numpy equivalent.  The public
names (``fk_sagittal``, ``ik_sagittal``, ``polygon_margins``) dispatch to
one or the other at import time.

Set ``BIPEDGAIT_DISABLE_NUMBA=1`` to force the numpy path.  The numba path
is also skipped when numba cannot be imported.
"""

from __future__ import annotations

import math
import os

import numpy as np

IK_OK = 0
IK_UNREACHABLE = 1
IK_DEGENERATE = 2

# acos loses half its digits as its argument nears +-1; inside this band the
# hip's triangle angle is taken from the solved knee with atan2 instead
ACOS_BAND = 1e-6


def _numba_requested() -> bool:
    flag = os.environ.get("BIPEDGAIT_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


try:
    if not _numba_requested():
        raise ImportError("numba disabled by BIPEDGAIT_DISABLE_NUMBA")
    import numba
    HAVE_NUMBA = True
except ImportError:
    numba = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# --------------------------------------------------------------------------
# numpy implementations

def _np_fk_sagittal(hip, knee, thigh, shank):
    hip = np.asarray(hip, dtype=np.float64)
    knee = np.asarray(knee, dtype=np.float64)
    x = thigh * np.sin(hip) + shank * np.sin(hip + knee)
    y = thigh * np.cos(hip) + shank * np.cos(hip + knee)
    return x, y


def _np_ik_sagittal(x, y, thigh, shank, eps):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    h = np.sqrt(x * x + y * y)
    lo = abs(thigh - shank)
    hi = thigh + shank
    status = np.where((h < lo - eps) | (h > hi + eps), IK_UNREACHABLE, IK_OK).astype(np.int8)
    status[h == 0.0] = IK_DEGENERATE
    # keep the division finite for degenerate rows; their status already flags them
    hs = np.where(h == 0.0, 1.0, h)
    alpha = np.arctan2(x, y)
    cb = np.clip((thigh * thigh - shank * shank + hs * hs) / (2.0 * thigh * hs), -1.0, 1.0)
    cg = np.clip((thigh * thigh + shank * shank - h * h) / (2.0 * thigh * shank), -1.0, 1.0)
    beta = np.arccos(cb)
    gamma = np.arccos(cg)
    knee = np.pi - gamma
    beta_hip = np.where(1.0 - np.abs(cb) < ACOS_BAND,
                        np.arctan2(shank * np.sin(knee), thigh + shank * np.cos(knee)), beta)
    return alpha - beta_hip, knee, h, alpha, beta, gamma, status


def _np_polygon_margins(points, verts, nverts):
    points = np.asarray(points, dtype=np.float64)
    verts = np.array(verts, dtype=np.float64)
    nverts = np.asarray(nverts)
    m = verts.shape[1]
    # pad short polygons with their last vertex: the padded edges have zero length
    idx = np.minimum(np.arange(m)[None, :], nverts[:, None] - 1)
    verts = np.take_along_axis(verts, idx[:, :, None], axis=1)
    a = verts
    b = np.roll(verts, -1, axis=1)
    e = b - a
    w = points[:, None, :] - a
    cross = e[..., 0] * w[..., 1] - e[..., 1] * w[..., 0]
    inside = np.all(cross >= 0.0, axis=1)
    ee = np.einsum("nmk,nmk->nm", e, e)
    safe = np.where(ee > 0.0, ee, 1.0)
    s = np.clip(np.einsum("nmk,nmk->nm", w, e) / safe, 0.0, 1.0)
    s = np.where(ee > 0.0, s, 0.0)
    d = w - s[..., None] * e
    dist = np.sqrt(np.min(np.einsum("nmk,nmk->nm", d, d), axis=1))
    return np.where(inside, dist, -dist)


# --------------------------------------------------------------------------
# numba implementations

def _nb_fk_sagittal_py(hip, knee, thigh, shank):
    n = hip.shape[0]
    x = np.empty(n)
    y = np.empty(n)
    for i in range(n):
        x[i] = thigh * math.sin(hip[i]) + shank * math.sin(hip[i] + knee[i])
        y[i] = thigh * math.cos(hip[i]) + shank * math.cos(hip[i] + knee[i])
    return x, y


def _nb_ik_sagittal_py(x, y, thigh, shank, eps):
    n = x.shape[0]
    hip = np.empty(n)
    knee = np.empty(n)
    hyp = np.empty(n)
    alpha = np.empty(n)
    beta = np.empty(n)
    gamma = np.empty(n)
    status = np.zeros(n, dtype=np.int8)
    lo = abs(thigh - shank)
    hi = thigh + shank
    for i in range(n):
        h = math.sqrt(x[i] * x[i] + y[i] * y[i])
        hyp[i] = h
        alpha[i] = math.atan2(x[i], y[i])
        cb = 1.0
        if h == 0.0:
            status[i] = IK_DEGENERATE
            beta[i] = 0.0
            gamma[i] = 0.0
        else:
            if h < lo - eps or h > hi + eps:
                status[i] = IK_UNREACHABLE
            cb = min(1.0, max(-1.0, (thigh * thigh - shank * shank + h * h) / (2.0 * thigh * h)))
            cg = (thigh * thigh + shank * shank - h * h) / (2.0 * thigh * shank)
            beta[i] = math.acos(cb)
            gamma[i] = math.acos(min(1.0, max(-1.0, cg)))
        knee[i] = math.pi - gamma[i]
        if 1.0 - abs(cb) < ACOS_BAND:
            hip[i] = alpha[i] - math.atan2(shank * math.sin(knee[i]),
                                           thigh + shank * math.cos(knee[i]))
        else:
            hip[i] = alpha[i] - beta[i]
    return hip, knee, hyp, alpha, beta, gamma, status


def _nb_polygon_margins_py(points, verts, nverts):
    n = points.shape[0]
    out = np.empty(n)
    for i in range(n):
        px = points[i, 0]
        py = points[i, 1]
        m = nverts[i]
        inside = True
        best = math.inf
        for j in range(m):
            ax = verts[i, j, 0]
            ay = verts[i, j, 1]
            k = j + 1 if j + 1 < m else 0
            ex = verts[i, k, 0] - ax
            ey = verts[i, k, 1] - ay
            wx = px - ax
            wy = py - ay
            if ex * wy - ey * wx < 0.0:
                inside = False
            ee = ex * ex + ey * ey
            s = 0.0
            if ee > 0.0:
                s = (wx * ex + wy * ey) / ee
                s = min(1.0, max(0.0, s))
            dx = wx - s * ex
            dy = wy - s * ey
            d2 = dx * dx + dy * dy
            if d2 < best:
                best = d2
        d = math.sqrt(best)
        out[i] = d if inside else -d
    return out


if HAVE_NUMBA:
    _nb_fk_sagittal = numba.njit(cache=True)(_nb_fk_sagittal_py)
    _nb_ik_sagittal = numba.njit(cache=True)(_nb_ik_sagittal_py)
    _nb_polygon_margins = numba.njit(cache=True)(_nb_polygon_margins_py)
else:
    _nb_fk_sagittal = _nb_fk_sagittal_py
    _nb_ik_sagittal = _nb_ik_sagittal_py
    _nb_polygon_margins = _nb_polygon_margins_py


# --------------------------------------------------------------------------
# dispatch

def _as_1d(a) -> np.ndarray:
    return np.ascontiguousarray(np.atleast_1d(np.asarray(a, dtype=np.float64)))


def fk_sagittal(hip, knee, thigh: float, shank: float, backend: str | None = None):
    """Ankle position ``(x, y)`` for arrays of hip and knee pitch angles."""
    hip, knee = np.broadcast_arrays(_as_1d(hip), _as_1d(knee))
    if (backend or BACKEND) == "numba":
        return _nb_fk_sagittal(np.ascontiguousarray(hip), np.ascontiguousarray(knee),
                               float(thigh), float(shank))
    return _np_fk_sagittal(hip, knee, float(thigh), float(shank))


def ik_sagittal(x, y, thigh: float, shank: float, eps: float, backend: str | None = None):
    """Batched two-link IK.

    Returns ``(hip, knee, hyp, alpha, beta, gamma, status)``; rows whose
    status is not ``IK_OK`` carry meaningless angles.
    """
    x, y = np.broadcast_arrays(_as_1d(x), _as_1d(y))
    if (backend or BACKEND) == "numba":
        return _nb_ik_sagittal(np.ascontiguousarray(x), np.ascontiguousarray(y),
                               float(thigh), float(shank), float(eps))
    return _np_ik_sagittal(x, y, float(thigh), float(shank), float(eps))


def polygon_margins(points, verts, nverts, backend: str | None = None) -> np.ndarray:
    """Signed distance of ``points[i]`` to CCW convex polygon ``verts[i, :nverts[i]]``."""
    points = np.ascontiguousarray(np.asarray(points, dtype=np.float64).reshape(-1, 2))
    verts = np.ascontiguousarray(np.asarray(verts, dtype=np.float64))
    nverts = np.ascontiguousarray(np.asarray(nverts, dtype=np.int64).reshape(-1))
    if (backend or BACKEND) == "numba":
        return _nb_polygon_margins(points, verts, nverts)
    return _np_polygon_margins(points, verts, nverts)
