"""Statically stable walk: phase sequence, per-instant pose, sampled trajectory.

The walk is a strict sequence of phases, each either a ramp (sway, hip
advance) or a single foot swing.  Between any two phases the robot is at
rest in double support, so it can stop at any phase boundary.

World bookkeeping along the walk uses three forward coordinates: the pelvis
position and the two ankle positions.  A leg's sagittal IK target is then
``(ankle - pelvis, crouch)``, reduced in height while that leg swings.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import InvalidParams, Unreachable
from .kinematics import (
    JointPose,
    RobotGeometry,
    SagittalTarget,
    ankle_pitch_flat,
    hip_advance_targets,
    lateral_sway_angles,
)
from .swing import SwingProfile, ramp, swing_point


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    @property
    def other(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT

    @property
    def sway_sign(self) -> float:
        # positive roll moves the pelvis right
        return 1.0 if self is Side.RIGHT else -1.0


class PhaseKind(enum.Enum):
    INITIAL_STANCE = "initial_stance"
    LATERAL_SHIFT = "lateral_shift"
    HALF_STEP = "half_step"
    FULL_STEP = "full_step"
    SHIFT_AND_ADVANCE = "shift_and_advance"
    FINAL_HALF_STEP = "final_half_step"
    RECENTER = "recenter"


SWING_KINDS = frozenset({PhaseKind.HALF_STEP, PhaseKind.FULL_STEP, PhaseKind.FINAL_HALF_STEP})


@dataclass(frozen=True)
class GaitPhase:
    """One segment of the walk.

    ``side`` is the swing leg for step phases and the foot the centre of
    mass moves over for shift phases.  ``advance`` is the forward hip travel
    during the phase.
    """

    kind: PhaseKind
    start: float
    duration: float
    side: Side | None = None
    advance: float = 0.0

    @property
    def end(self) -> float:
        return self.start + self.duration

    @property
    def swing_leg(self) -> Side | None:
        return self.side if self.kind in SWING_KINDS else None

    @property
    def label(self) -> str:
        if self.side is None:
            return self.kind.value
        return f"{self.kind.value}({self.side.value})"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "side": None if self.side is None else self.side.value,
            "advance": self.advance,
            "start": self.start,
            "duration": self.duration,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "GaitPhase":
        side = d.get("side")
        return cls(PhaseKind(d["kind"]), float(d["start"]), float(d["duration"]),
                   None if side is None else Side(side), float(d.get("advance", 0.0)))


@dataclass(frozen=True)
class GaitParams:
    """Walk parameters.

    ``crouch_hip_height`` is the vertical ankle-below-hip distance held by
    the stance legs; ``None`` means 0.9 of the leg length, resolved against
    the geometry by :meth:`resolved`.  ``lead_leg`` takes the first half
    step; mirroring it mirrors the whole walk.
    """

    n_steps: int = 2
    step_length: float = 0.06
    step_height: float = 0.02
    sway_angle: float = 0.15
    crouch_hip_height: float | None = None
    phase_duration: float = 1.0
    sample_rate: float = 50.0
    apex_fraction: float = 0.4
    lead_leg: Side = Side.LEFT

    def __post_init__(self):
        if isinstance(self.lead_leg, str):
            object.__setattr__(self, "lead_leg", Side(self.lead_leg))
        if isinstance(self.n_steps, bool) or not isinstance(self.n_steps, (int, np.integer)):
            raise InvalidParams(f"n_steps must be an integer, got {self.n_steps!r}")
        if self.n_steps < 0:
            raise InvalidParams("n_steps must be >= 0")
        for name in ("step_length", "step_height", "sway_angle", "phase_duration",
                     "sample_rate", "apex_fraction"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise InvalidParams(f"{name} must be a finite number, got {v!r}")
        if self.step_length < 0:
            raise InvalidParams("step_length must be >= 0")
        if self.step_height <= 0:
            raise InvalidParams("step_height must be > 0")
        # sway 0 is accepted so the unswayed walk can serve as a negative control
        if not 0 <= self.sway_angle < math.pi / 4:
            raise InvalidParams("sway_angle must lie in [0, pi/4)")
        if self.phase_duration <= 0:
            raise InvalidParams("phase_duration must be > 0")
        if self.sample_rate < 10:
            raise InvalidParams("sample_rate must be >= 10 Hz")
        if not 0 < self.apex_fraction < 1:
            raise InvalidParams("apex_fraction must lie in (0, 1)")
        if self.crouch_hip_height is not None and not (
                isinstance(self.crouch_hip_height, (int, float))
                and math.isfinite(self.crouch_hip_height) and self.crouch_hip_height > 0):
            raise InvalidParams("crouch_hip_height must be > 0")

    def resolved(self, geom: RobotGeometry) -> "GaitParams":
        if self.crouch_hip_height is not None:
            return self
        return replace(self, crouch_hip_height=0.9 * geom.leg_len)

    def mirrored(self) -> "GaitParams":
        return replace(self, lead_leg=self.lead_leg.other)

    def swing_profile(self, length: float) -> SwingProfile:
        return SwingProfile(length, self.step_height, self.apex_fraction)


def plan_phases(params: GaitParams) -> list[GaitPhase]:
    """Phase sequence of the walk, tiling ``[0, total)`` without gaps.

    With ``n_steps == 0`` the robot only stands.  Otherwise the lead leg
    takes a half step, ``n_steps`` full steps alternate starting with the
    other leg, and a final half step brings the feet together.  Every step
    is preceded by a sway over the foot that stays down; every sway after
    the first also advances the hip by half a step.
    """
    if not isinstance(params, GaitParams):
        raise InvalidParams("params must be a GaitParams")
    dur = params.phase_duration
    half = 0.5 * params.step_length
    layout: list[tuple[PhaseKind, Side | None, float]] = [(PhaseKind.INITIAL_STANCE, None, 0.0)]
    if params.n_steps > 0:
        lead = params.lead_leg
        layout.append((PhaseKind.LATERAL_SHIFT, lead.other, 0.0))
        layout.append((PhaseKind.HALF_STEP, lead, 0.0))
        swing = lead.other
        for _ in range(params.n_steps):
            layout.append((PhaseKind.SHIFT_AND_ADVANCE, swing.other, half))
            layout.append((PhaseKind.FULL_STEP, swing, 0.0))
            swing = swing.other
        layout.append((PhaseKind.SHIFT_AND_ADVANCE, swing.other, half))
        layout.append((PhaseKind.FINAL_HALF_STEP, swing, 0.0))
    layout.append((PhaseKind.RECENTER, None, 0.0))
    phases = []
    start = 0.0
    for kind, side, adv in layout:
        phases.append(GaitPhase(kind, start, dur, side, adv))
        start = start + dur
    return phases


def total_duration(phases: list[GaitPhase]) -> float:
    return phases[-1].end if phases else 0.0


class _State(NamedTuple):
    sway: float
    pelvis: float
    left: float
    right: float

    def foot(self, side: Side) -> float:
        return self.left if side is Side.LEFT else self.right


def _step_length(phase: GaitPhase, params: GaitParams) -> float:
    if phase.kind is PhaseKind.FULL_STEP:
        return params.step_length
    return 0.5 * params.step_length


def phase_states(phases: list[GaitPhase], params: GaitParams) -> list[_State]:
    """State at the start of each phase, plus the final state."""
    s = _State(0.0, 0.0, 0.0, 0.0)
    out = [s]
    for ph in phases:
        k = ph.kind
        if k is PhaseKind.LATERAL_SHIFT or k is PhaseKind.SHIFT_AND_ADVANCE:
            s = s._replace(sway=ph.side.sway_sign * params.sway_angle,
                           pelvis=s.pelvis + ph.advance)
        elif k in SWING_KINDS:
            moved = s.foot(ph.side) + _step_length(ph, params)
            s = s._replace(**{ph.side.value: moved})
        elif k is PhaseKind.RECENTER:
            s = s._replace(sway=0.0)
        out.append(s)
    return out


def contact_flags(phases: list[GaitPhase], t) -> np.ndarray:
    """``(n, 2)`` boolean array: is the (left, right) foot on the ground at ``t``.

    A phase owns ``[start, end)``; the final instant belongs to the last
    phase.  Only the swing leg of a step phase is off the ground.
    """
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    idx = _phase_index(phases, t)
    flags = np.ones((t.size, 2), dtype=bool)
    for i, ph in enumerate(phases):
        leg = ph.swing_leg
        if leg is not None:
            flags[idx == i, 0 if leg is Side.LEFT else 1] = False
    return flags


def _phase_index(phases: list[GaitPhase], t: np.ndarray) -> np.ndarray:
    starts = np.array([p.start for p in phases])
    return np.clip(np.searchsorted(starts, t, side="right") - 1, 0, len(phases) - 1)


def _evaluate(t: np.ndarray, phases: list[GaitPhase], params: GaitParams,
              geom: RobotGeometry):
    """Angles ``(n, 10)`` in trajectory column order for sample times ``t``."""
    params = params.resolved(geom)
    crouch = params.crouch_hip_height
    states = phase_states(phases, params)
    idx = _phase_index(phases, t)
    n = t.size
    sway = np.empty(n)
    tx = {Side.LEFT: np.empty(n), Side.RIGHT: np.empty(n)}
    ty = {Side.LEFT: np.full(n, crouch), Side.RIGHT: np.full(n, crouch)}
    for i, ph in enumerate(phases):
        m = idx == i
        if not m.any():
            continue
        tt = t[m]
        s0, s1 = states[i], states[i + 1]
        th = s0.sway + ramp(tt, ph.start, ph.duration, s1.sway - s0.sway)
        sway[m] = th
        d = ramp(tt, ph.start, ph.duration, ph.advance) if ph.advance else 0.0
        for side in Side:
            x0 = s0.foot(side) - s0.pelvis
            if side is ph.swing_leg:
                u = np.clip((tt - ph.start) / ph.duration, 0.0, 1.0)
                dx, dz = swing_point(u, params.swing_profile(_step_length(ph, params)))
                tx[side][m] = x0 + dx
                # keeps the sole exactly dz above ground under the current sway
                ty[side][m] = crouch - dz / np.cos(th)
            else:
                tx[side][m] = hip_advance_targets(SagittalTarget(x0, crouch), d).x
    out = np.empty((n, 10))
    rolls = lateral_sway_angles(sway)
    for k, side in enumerate((Side.LEFT, Side.RIGHT)):
        hip, knee, h, _, _, _, status = kernels.ik_sagittal(
            tx[side], ty[side], geom.thigh_len, geom.shank_len, geom.reach_eps)
        bad = np.flatnonzero(status)
        if bad.size:
            j = int(bad[0])
            lo, hi = geom.reach_range()
            ph = phases[int(idx[j])]
            raise Unreachable(float(h[j]), lo, hi, phase=ph.label, t=float(t[j]))
        c = 5 * k
        out[:, c + 0] = rolls[k][0]
        out[:, c + 1] = hip
        out[:, c + 2] = knee
        out[:, c + 3] = ankle_pitch_flat(hip, knee)
        out[:, c + 4] = rolls[k][1]
    return out


def pose_at(t: float, phases: list[GaitPhase], params: GaitParams,
            geom: RobotGeometry) -> JointPose:
    """Joint angles of the walk at time ``t``."""
    total = total_duration(phases)
    if not 0.0 <= t <= total:
        raise InvalidParams(f"t={t!r} outside [0, {total}]")
    row = _evaluate(np.array([float(t)]), phases, params, geom)[0]
    return JointPose.from_row(row, t=float(t))


def sample_times(total: float, rate: float) -> np.ndarray:
    n = int(math.floor(total * rate + 1e-9))
    return np.arange(n + 1) / rate


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled walk.

    ``angles`` has one row per sample in trajectory column order:
    left then right leg, each ``hip_roll, hip_pitch, knee, ankle_pitch,
    ankle_roll``.
    """

    times: np.ndarray
    angles: np.ndarray
    phases: list[GaitPhase]
    geom: RobotGeometry
    params: GaitParams | None = None
    sample_rate: float = field(default=50.0)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def samples(self) -> list[JointPose]:
        return [JointPose.from_row(r, t=float(t)) for t, r in zip(self.times, self.angles)]

    @property
    def duration(self) -> float:
        return float(self.times[-1]) if len(self.times) else 0.0


def plan_walk(params: GaitParams, geom: RobotGeometry) -> Trajectory:
    """Plan the walk and sample it at ``params.sample_rate``.

    Raises :class:`Unreachable` carrying the phase label and sample time
    when a target falls outside the leg's workspace.
    """
    params = params.resolved(geom)
    if params.crouch_hip_height > geom.leg_len:
        raise InvalidParams("crouch_hip_height exceeds the leg length")
    phases = plan_phases(params)
    times = sample_times(total_duration(phases), params.sample_rate)
    angles = _evaluate(times, phases, params, geom)
    return Trajectory(times, angles, phases, geom, params, params.sample_rate)
