"""Closed-form leg kinematics.

Sagittal frame: origin at the hip-pitch joint, ``x`` forward, ``y`` positive
downward.  Pitch angles are measured from the straight-down leg and grow as
the distal link swings toward ``+x``.  All angles zero means the leg hangs
fully extended with the sole flat.

Roll angles act about the forward axis; a positive roll on the stance leg
moves the pelvis toward the robot's right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DegenerateGeometry, InvalidParams, Unreachable

REACH_RTOL = 1e-9


@dataclass(frozen=True)
class RobotGeometry:
    """Link lengths and foot dimensions of the 10-DOF lower body, in metres."""

    thigh_len: float = 0.12
    shank_len: float = 0.12
    ankle_height: float = 0.03
    foot_len: float = 0.14
    foot_width: float = 0.08
    foot_fwd_offset: float = 0.02
    hip_spacing: float = 0.08
    com_height_offset: float = 0.05

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise InvalidParams(f"{f.name} must be a finite number, got {v!r}")
        for name in ("thigh_len", "shank_len", "ankle_height", "foot_len",
                     "foot_width", "hip_spacing"):
            if getattr(self, name) <= 0:
                raise InvalidParams(f"{name} must be > 0")
        if self.com_height_offset < 0:
            raise InvalidParams("com_height_offset must be >= 0")

    @property
    def leg_len(self) -> float:
        return self.thigh_len + self.shank_len

    @property
    def reach_eps(self) -> float:
        return REACH_RTOL * self.leg_len

    def reach_range(self) -> tuple[float, float]:
        return abs(self.thigh_len - self.shank_len), self.leg_len


class SagittalTarget(NamedTuple):
    """Ankle joint relative to the hip-pitch joint (x forward, y down)."""

    x: float
    y: float


@dataclass(frozen=True)
class LegAngles:
    hip_pitch: float = 0.0
    knee_pitch: float = 0.0
    ankle_pitch: float = 0.0
    hip_roll: float = 0.0
    ankle_roll: float = 0.0

    def as_row(self) -> tuple[float, float, float, float, float]:
        """Angles in trajectory-file column order."""
        return (self.hip_roll, self.hip_pitch, self.knee_pitch, self.ankle_pitch, self.ankle_roll)

    @classmethod
    def from_row(cls, row) -> "LegAngles":
        hip_roll, hip_pitch, knee, ankle_pitch, ankle_roll = (float(v) for v in row)
        return cls(hip_pitch, knee, ankle_pitch, hip_roll, ankle_roll)


@dataclass(frozen=True)
class JointPose:
    left: LegAngles
    right: LegAngles
    t: float | None = None

    def as_row(self) -> tuple[float, ...]:
        return self.left.as_row() + self.right.as_row()

    @classmethod
    def from_row(cls, row, t: float | None = None) -> "JointPose":
        row = list(row)
        if len(row) != 10:
            raise ValueError(f"expected 10 joint angles, got {len(row)}")
        return cls(LegAngles.from_row(row[:5]), LegAngles.from_row(row[5:]), t)

    def mirrored(self) -> "JointPose":
        """Swap legs and negate roll angles."""
        def flip(a: LegAngles) -> LegAngles:
            return LegAngles(a.hip_pitch, a.knee_pitch, a.ankle_pitch, -a.hip_roll, -a.ankle_roll)
        return JointPose(flip(self.right), flip(self.left), self.t)


class IKTerms(NamedTuple):
    """Intermediate quantities of the two-link solution.

    ``hyp`` is the hip-ankle distance, ``alpha`` the direction of the
    hip-ankle line from straight down, ``beta`` the triangle angle at the hip
    and ``gamma`` the triangle angle at the knee.
    """

    hyp: float
    alpha: float
    beta: float
    gamma: float


def fk_sagittal(hip_pitch: float, knee_pitch: float, geom: RobotGeometry) -> SagittalTarget:
    x, y = kernels.fk_sagittal(hip_pitch, knee_pitch, geom.thigh_len, geom.shank_len)
    return SagittalTarget(float(x[0]), float(y[0]))


def _raise_for_status(status: int, hyp: float, geom: RobotGeometry) -> None:
    if status == kernels.IK_DEGENERATE:
        raise DegenerateGeometry("ankle target coincides with the hip joint")
    if status == kernels.IK_UNREACHABLE:
        lo, hi = geom.reach_range()
        raise Unreachable(hyp, lo, hi)


def ik_terms(target: SagittalTarget, geom: RobotGeometry) -> IKTerms:
    _, _, h, a, b, g, status = kernels.ik_sagittal(
        target[0], target[1], geom.thigh_len, geom.shank_len, geom.reach_eps)
    _raise_for_status(int(status[0]), float(h[0]), geom)
    return IKTerms(float(h[0]), float(a[0]), float(b[0]), float(g[0]))


def ik_sagittal(target: SagittalTarget, geom: RobotGeometry) -> tuple[float, float]:
    """Hip and knee pitch placing the ankle at ``target``.

    Always returns the branch with ``knee_pitch >= 0``.  Raises
    :class:`Unreachable` outside the annulus ``|thigh - shank| <= H <= thigh + shank``
    (with a ``1e-9 * leg_len`` tolerance) and :class:`DegenerateGeometry`
    when the target sits on the hip joint.
    """
    hip, knee, h, _, _, _, status = kernels.ik_sagittal(
        target[0], target[1], geom.thigh_len, geom.shank_len, geom.reach_eps)
    _raise_for_status(int(status[0]), float(h[0]), geom)
    return float(hip[0]), float(knee[0])


def ik_sagittal_batch(x, y, geom: RobotGeometry) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`ik_sagittal`; raises on the first unsolvable row."""
    hip, knee, h, _, _, _, status = kernels.ik_sagittal(
        x, y, geom.thigh_len, geom.shank_len, geom.reach_eps)
    bad = np.flatnonzero(status)
    if bad.size:
        i = int(bad[0])
        _raise_for_status(int(status[i]), float(h[i]), geom)
    return hip, knee


def ankle_pitch_flat(hip_pitch, knee_pitch):
    """Ankle pitch that keeps the sole parallel to flat ground."""
    return -(hip_pitch + knee_pitch)


def ankle_pitch_intersection(hip_pitch: float, knee_pitch: float,
                             thigh_len: float = 1.0, shank_len: float = 1.0) -> float:
    """Flat-foot ankle pitch from the shank/ground-axis triangle.

    The shank line is extended up to the horizontal axis through the hip.
    The right triangle formed by that intersection point, the ankle and the
    ankle's foot on the axis gives the angle CP at the intersection; the
    shank leans ``90 deg - CP`` off vertical and the ankle cancels it.

    Independent cross-check of :func:`ankle_pitch_flat`.  Only defined while
    the shank points downward, is neither vertical nor horizontal and the
    ankle sits below the axis; raises ``ValueError`` otherwise.
    """
    kx, ky = thigh_len * math.sin(hip_pitch), thigh_len * math.cos(hip_pitch)
    ax = kx + shank_len * math.sin(hip_pitch + knee_pitch)
    ay = ky + shank_len * math.cos(hip_pitch + knee_pitch)
    if ay <= 0.0 or ay <= ky:
        raise ValueError("shank must point downward with the ankle below the ground axis")
    if ax == kx:
        raise ValueError("vertical shank: the triangle is degenerate")
    # line K->A meets y = 0 at xi
    xi = ax - ay * (ax - kx) / (ay - ky)
    leg_a = ax - xi
    cp = math.atan2(ay, abs(leg_a))
    return -math.copysign(0.5 * math.pi - cp, leg_a)


def lateral_sway_angles(theta):
    """Per-leg ``(hip_roll, ankle_roll)`` for a lateral sway of ``theta``.

    Both hips get ``theta`` and both ankles ``-theta``: the legs form a
    parallelogram, so the pelvis stays level and the soles stay flat.
    Returned as ``(left, right)``; ``theta`` may be an array.
    """
    if not np.all(np.abs(theta) < 0.5 * math.pi):
        raise InvalidParams(f"sway angle must satisfy |theta| < pi/2, got {theta!r}")
    leg = (theta, -theta)
    return leg, leg


def sway_offsets(theta, leg_height):
    """Pelvis ``(lateral shift, vertical drop)`` produced by a sway.

    ``leg_height`` is the ankle-to-hip distance in the frontal plane.  The
    shift is toward the right for positive ``theta``.
    """
    return leg_height * np.sin(theta), leg_height * (1.0 - np.cos(theta))


def hip_advance_targets(targets, d: float):
    """Shift stance targets by a hip advance of ``d``.

    Moving the hip forward by ``d`` moves every grounded ankle back by ``d``
    in the hip frame.  Accepts a single target or a sequence of them.
    """
    if isinstance(targets, SagittalTarget):
        return SagittalTarget(targets.x - d, targets.y)
    return [SagittalTarget(t[0] - d, t[1]) for t in targets]
