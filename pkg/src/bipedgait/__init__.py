"""Statically stable biped walking from closed-form geometric kinematics."""

from .errors import (
    ConfigError,
    DegenerateGeometry,
    DegeneratePolygon,
    GaitError,
    InvalidDuration,
    InvalidParams,
    MalformedTrajectory,
    NoContact,
    PhaseOutOfRange,
    Unreachable,
)
from .kernels import BACKEND
from .kinematics import (
    IKTerms,
    JointPose,
    LegAngles,
    RobotGeometry,
    SagittalTarget,
    ankle_pitch_flat,
    ankle_pitch_intersection,
    fk_sagittal,
    hip_advance_targets,
    ik_sagittal,
    ik_terms,
    lateral_sway_angles,
)
from .planner import GaitParams, GaitPhase, PhaseKind, Side, Trajectory, plan_phases, plan_walk, pose_at
from .polygon import SupportPolygon, convex_hull, signed_margin
from .stability import StabilityReport, check_trajectory, world_pose
from .swing import SwingProfile, ramp, swing_point

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ConfigError",
    "DegenerateGeometry",
    "DegeneratePolygon",
    "GaitError",
    "GaitParams",
    "GaitPhase",
    "IKTerms",
    "InvalidDuration",
    "InvalidParams",
    "JointPose",
    "LegAngles",
    "MalformedTrajectory",
    "NoContact",
    "PhaseKind",
    "PhaseOutOfRange",
    "RobotGeometry",
    "SagittalTarget",
    "Side",
    "StabilityReport",
    "SupportPolygon",
    "SwingProfile",
    "Trajectory",
    "Unreachable",
    "ankle_pitch_flat",
    "ankle_pitch_intersection",
    "check_trajectory",
    "convex_hull",
    "fk_sagittal",
    "hip_advance_targets",
    "ik_sagittal",
    "ik_terms",
    "lateral_sway_angles",
    "plan_phases",
    "plan_walk",
    "pose_at",
    "ramp",
    "signed_margin",
    "swing_point",
    "world_pose",
]
