"""Static stability check: centre of mass over the support polygon.

The checker sees only joint angles and per-phase contact flags.  It rebuilds
the world pose of every sample by rigid-chain forward kinematics from a foot
pinned to the ground, moving the pin to the other foot whenever the pinned
one lifts off.

World frame: ``x`` forward, ``y`` to the robot's left, ``z`` up, ground at
``z = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePolygon, NoContact
from .kinematics import JointPose, LegAngles, RobotGeometry
from .planner import Side, Trajectory, contact_flags
from .polygon import SupportPolygon, convex_hull, signed_margins

DEFAULT_THRESHOLD = 0.0
RECOMMENDED_THRESHOLD = 0.005


def _rot_x(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _rot_pitch(a: float) -> np.ndarray:
    # rotation about +y by -a: positive angles swing the downward link forward
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, 0.0, -s], [0.0, 1.0, 0.0], [s, 0.0, c]])


@dataclass(frozen=True)
class LegChain:
    """Joint positions of one leg and its sole orientation, in one frame."""

    hip: np.ndarray
    knee: np.ndarray
    ankle: np.ndarray
    sole: np.ndarray      # ankle projected onto the sole plane
    sole_rot: np.ndarray  # sole frame orientation
    corners: np.ndarray   # (4, 3) CCW seen from above when flat


def leg_chain(angles: LegAngles, side: Side, geom: RobotGeometry) -> LegChain:
    """Forward kinematics of one leg in the pelvis frame."""
    lateral = 0.5 * geom.hip_spacing * (1.0 if side is Side.LEFT else -1.0)
    hip = np.array([0.0, lateral, 0.0])
    r1 = _rot_x(angles.hip_roll) @ _rot_pitch(angles.hip_pitch)
    knee = hip + r1 @ np.array([0.0, 0.0, -geom.thigh_len])
    r2 = r1 @ _rot_pitch(angles.knee_pitch)
    ankle = knee + r2 @ np.array([0.0, 0.0, -geom.shank_len])
    r3 = r2 @ _rot_pitch(angles.ankle_pitch) @ _rot_x(angles.ankle_roll)
    sole = ankle + r3 @ np.array([0.0, 0.0, -geom.ankle_height])
    hl, hw, f = 0.5 * geom.foot_len, 0.5 * geom.foot_width, geom.foot_fwd_offset
    local = np.array([[f - hl, -hw, 0.0], [f + hl, -hw, 0.0],
                      [f + hl, hw, 0.0], [f - hl, hw, 0.0]])
    corners = sole + local @ r3.T
    return LegChain(hip, knee, ankle, sole, r3, corners)


@dataclass(frozen=True)
class Anchor:
    """Foot pinned flat on the ground, with its ankle projection at ``(x, y)``."""

    side: Side
    x: float = 0.0
    y: float = 0.0


@dataclass(frozen=True)
class FootprintRect:
    corners: np.ndarray   # (4, 2) ground-plane corners
    in_contact: bool
    height: float = 0.0   # mean sole height above ground

    @property
    def center(self) -> np.ndarray:
        return self.corners.mean(axis=0)


@dataclass(frozen=True)
class WorldPose:
    left: FootprintRect
    right: FootprintRect
    left_hip: np.ndarray
    right_hip: np.ndarray
    left_ankle: np.ndarray
    right_ankle: np.ndarray
    left_sole: np.ndarray
    right_sole: np.ndarray
    pelvis: np.ndarray
    com: np.ndarray
    anchor: Anchor

    @property
    def com_xy(self) -> np.ndarray:
        return self.com[:2]

    def foot(self, side: Side) -> FootprintRect:
        return self.left if side is Side.LEFT else self.right

    def ankle(self, side: Side) -> np.ndarray:
        return self.left_ankle if side is Side.LEFT else self.right_ankle

    def ground_point(self, side: Side) -> np.ndarray:
        """Ankle projection onto the sole plane, ``(x, y)``."""
        sole = self.left_sole if side is Side.LEFT else self.right_sole
        return sole[:2].copy()


def world_pose(pose: JointPose, geom: RobotGeometry, anchor: Anchor,
               contact: tuple[bool, bool] = (True, True)) -> WorldPose:
    """Place the whole lower body in the world from the anchored foot.

    ``contact`` flags (left, right) ground contact; the anchored foot must
    be one of the feet in contact.
    """
    if not (contact[0] or contact[1]):
        raise NoContact("neither foot is in contact")
    if not contact[0 if anchor.side is Side.LEFT else 1]:
        raise ValueError(f"anchor foot {anchor.side.value} is not in contact")
    chains = {Side.LEFT: leg_chain(pose.left, Side.LEFT, geom),
              Side.RIGHT: leg_chain(pose.right, Side.RIGHT, geom)}
    a = chains[anchor.side]
    # the anchored sole is world-aligned, so world_R_pelvis undoes its rotation
    rot = a.sole_rot.T
    offset = np.array([anchor.x, anchor.y, 0.0]) - rot @ a.sole

    def w(p):
        return rot @ p + offset

    feet = {}
    for i, side in enumerate((Side.LEFT, Side.RIGHT)):
        c = chains[side].corners @ rot.T + offset
        feet[side] = FootprintRect(c[:, :2].copy(), bool(contact[i]), float(c[:, 2].mean()))
    pelvis = w(np.zeros(3))
    com = w(np.array([0.0, 0.0, geom.com_height_offset]))
    return WorldPose(feet[Side.LEFT], feet[Side.RIGHT],
                     w(chains[Side.LEFT].hip), w(chains[Side.RIGHT].hip),
                     w(chains[Side.LEFT].ankle), w(chains[Side.RIGHT].ankle),
                     w(chains[Side.LEFT].sole), w(chains[Side.RIGHT].sole),
                     pelvis, com, anchor)


def support_polygon(wp: WorldPose) -> SupportPolygon:
    """Hull of the soles in contact (one sole in single support)."""
    pts = [f.corners for f in (wp.left, wp.right) if f.in_contact]
    if not pts:
        raise NoContact("neither foot is in contact")
    return convex_hull(np.vstack(pts))


def _initial_anchor_side(flags: np.ndarray) -> Side:
    # pin the foot that stays down through the first single-support stretch
    for left, right in flags:
        if left != right:
            return Side.LEFT if left else Side.RIGHT
    return Side.LEFT if flags[0, 0] or not flags[0, 1] else Side.RIGHT


def trace_world(samples: list[JointPose], flags: np.ndarray, geom: RobotGeometry,
                origin=(0.0, 0.0)) -> list[WorldPose]:
    """World pose of every sample, carrying the ground pin across steps.

    The first pinned foot has its ankle projection at ``origin`` offset
    sideways by half the hip spacing, so a symmetric stance puts the pelvis
    over ``origin``.
    """
    if len(samples) == 0:
        return []
    side = _initial_anchor_side(flags)
    lateral = 0.5 * geom.hip_spacing * (1.0 if side is Side.LEFT else -1.0)
    anchor = Anchor(side, float(origin[0]), float(origin[1]) + lateral)
    out: list[WorldPose] = []
    for i, pose in enumerate(samples):
        contact = (bool(flags[i, 0]), bool(flags[i, 1]))
        if not (contact[0] or contact[1]):
            raise NoContact(f"sample {i}: neither foot is in contact")
        if not contact[0 if anchor.side is Side.LEFT else 1]:
            other = anchor.side.other
            if out:
                gx, gy = out[-1].ground_point(other)
            else:
                gx, gy = anchor.x, anchor.y - 2 * lateral
            anchor = Anchor(other, float(gx), float(gy))
        out.append(world_pose(pose, geom, anchor, contact))
    return out


@dataclass(frozen=True)
class StabilityReport:
    """Per-sample stability margins of a trajectory plus a summary.

    ``margins[i]`` is the signed distance of the centre-of-mass ground
    projection to the support-polygon boundary, positive inside.
    """

    times: np.ndarray
    com_xy: np.ndarray
    polygons: list[SupportPolygon]
    margins: np.ndarray
    support: list[str]
    threshold: float
    max_contact_gap: float

    @property
    def min_margin(self) -> float:
        return float(self.margins.min())

    @property
    def argmin_index(self) -> int:
        return int(np.argmin(self.margins))

    @property
    def argmin_t(self) -> float:
        return float(self.times[self.argmin_index])

    @property
    def passed(self) -> bool:
        return self.min_margin >= self.threshold

    def first_failure(self) -> int | None:
        bad = np.flatnonzero(self.margins < self.threshold)
        return int(bad[0]) if bad.size else None

    def summary(self) -> dict:
        return {
            "passed": self.passed,
            "threshold": self.threshold,
            "min_margin": self.min_margin,
            "argmin_index": self.argmin_index,
            "argmin_t": self.argmin_t,
            "first_failure_index": self.first_failure(),
            "samples": int(len(self.times)),
            "max_contact_gap": self.max_contact_gap,
        }


def check_trajectory(traj: Trajectory, geom: RobotGeometry,
                     threshold: float = DEFAULT_THRESHOLD,
                     origin=(0.0, 0.0)) -> StabilityReport:
    """Stability margin of every sample of ``traj``.

    Contact comes from the phase schedule: the swing leg of a step phase is
    off the ground, both feet are down otherwise.
    """
    flags = contact_flags(traj.phases, traj.times)
    world = trace_world(traj.samples, flags, geom, origin)
    polys = []
    for i, wp in enumerate(world):
        try:
            polys.append(support_polygon(wp))
        except DegeneratePolygon as exc:
            raise DegeneratePolygon(f"sample {i}: {exc}") from exc
    com = np.array([wp.com_xy for wp in world]).reshape(-1, 2)
    margins = signed_margins(com, polys)
    gap = 0.0
    for wp in world:
        for f in (wp.left, wp.right):
            if f.in_contact:
                gap = max(gap, abs(f.height))
    support = ["double" if a and b else "single" for a, b in flags]
    return StabilityReport(np.asarray(traj.times, dtype=np.float64), com, polys,
                           margins, support, float(threshold), gap)
