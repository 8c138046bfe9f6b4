"""Time-parameterised curves: the linear joint ramp and the foot swing arc."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDuration, InvalidParams, PhaseOutOfRange


def ramp(t, t0: float, dur: float, target: float):
    """Linear progress from 0 to ``target`` over ``[t0, t0 + dur]``.

    Exactly 0 up to ``t0`` and exactly ``target`` from ``t0 + dur`` on.
    Works elementwise on arrays.
    """
    if not dur > 0:
        raise InvalidDuration(f"ramp duration must be > 0, got {dur!r}")
    t = np.asarray(t, dtype=np.float64)
    out = np.where(t <= t0, 0.0,
                   np.where(t >= t0 + dur, target, target * ((t - t0) / dur)))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class SwingProfile:
    """Shape of one foot swing.

    Height rises along a quarter sine to ``step_height`` at
    ``apex_fraction`` and falls along another quarter sine, so the lift-off
    is quick and the touch-down steeper than the late ascent.  Forward
    motion is a cycloid with zero velocity at both ends.
    """

    step_length: float
    step_height: float
    apex_fraction: float = 0.4

    def __post_init__(self):
        if not self.step_length >= 0:
            raise InvalidParams("step_length must be >= 0")
        if not self.step_height > 0:
            raise InvalidParams("step_height must be > 0")
        if not 0 < self.apex_fraction < 1:
            raise InvalidParams("apex_fraction must lie in (0, 1)")


def swing_point(u, profile: SwingProfile):
    """Ankle ``(dx, dz)`` at swing phase ``u`` in [0, 1].

    ``dx`` is the forward progress and ``dz`` the lift above the ground.
    Accepts scalars or arrays.
    """
    u = np.asarray(u, dtype=np.float64)
    if np.any(~((u >= 0.0) & (u <= 1.0))):
        raise PhaseOutOfRange("swing phase must lie in [0, 1]")
    a = profile.apex_fraction
    h = profile.step_height
    two_pi = 2.0 * math.pi
    dx = profile.step_length * (u - np.sin(two_pi * u) / two_pi)
    # descent written with sin so that dz(1) is exactly zero
    dz = np.where(u <= a,
                  h * np.sin(0.5 * math.pi * (u / a)),
                  h * np.sin(0.5 * math.pi * ((1.0 - u) / (1.0 - a))))
    if u.ndim == 0:
        return float(dx), float(dz)
    return dx, dz
