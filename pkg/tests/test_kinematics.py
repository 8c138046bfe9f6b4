import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bipedgait import (
    DegenerateGeometry,
    InvalidParams,
    JointPose,
    LegAngles,
    RobotGeometry,
    SagittalTarget,
    Unreachable,
    ankle_pitch_flat,
    ankle_pitch_intersection,
    fk_sagittal,
    hip_advance_targets,
    ik_sagittal,
    ik_terms,
    lateral_sway_angles,
)
from bipedgait.planner import Side
from bipedgait.stability import Anchor, world_pose

UNIT = RobotGeometry(thigh_len=1.0, shank_len=1.0)


def fk_oracle(hip, knee, thigh, shank):
    return (thigh * math.sin(hip) + shank * math.sin(hip + knee),
            thigh * math.cos(hip) + shank * math.cos(hip + knee))


# ---------------------------------------------------------------- fk

def test_fk_straight_leg():
    assert fk_sagittal(0.0, 0.0, UNIT) == pytest.approx((0.0, 2.0), abs=1e-15)


def test_fk_right_angle_knee():
    assert fk_sagittal(0.0, math.pi / 2, UNIT) == pytest.approx((1.0, 1.0), abs=1e-15)


def test_fk_regression_value(geom):
    # frozen from a 40-digit evaluation of the two-line formula
    x, y = fk_sagittal(0.3, 0.5, geom)
    assert x == pytest.approx(0.12154515570730348041, abs=1e-15)
    assert y == pytest.approx(0.19824518381673257287, abs=1e-15)


# ---------------------------------------------------------------- ik

def test_ik_full_extension(geom):
    hip, knee = ik_sagittal(SagittalTarget(0.0, geom.leg_len), geom)
    assert hip == pytest.approx(0.0, abs=1e-7)
    assert knee == pytest.approx(0.0, abs=1e-7)


def test_ik_right_angle():
    hip, knee = ik_sagittal(SagittalTarget(1.0, 1.0), UNIT)
    assert knee == pytest.approx(math.pi / 2, abs=1e-12)
    assert hip == pytest.approx(0.0, abs=1e-12)
    assert fk_oracle(hip, knee, 1.0, 1.0) == pytest.approx((1.0, 1.0), abs=1e-12)


def test_ik_beyond_reach():
    with pytest.raises(Unreachable) as exc:
        ik_sagittal(SagittalTarget(0.0, 3.0), UNIT)
    assert exc.value.distance == pytest.approx(3.0)
    assert exc.value.min == 0.0 and exc.value.max == 2.0


def test_ik_inside_inner_radius():
    g = RobotGeometry(thigh_len=0.15, shank_len=0.10)
    with pytest.raises(Unreachable):
        ik_sagittal(SagittalTarget(0.0, 0.04), g)


def test_ik_target_on_hip():
    with pytest.raises(DegenerateGeometry):
        ik_sagittal(SagittalTarget(0.0, 0.0), UNIT)


def test_ik_boundary_tolerance(geom):
    # a hair beyond full extension is accepted, a visible overshoot is not
    ik_sagittal(SagittalTarget(0.0, geom.leg_len * (1 + 5e-10)), geom)
    with pytest.raises(Unreachable):
        ik_sagittal(SagittalTarget(0.0, geom.leg_len * (1 + 5e-9)), geom)


lengths = st.floats(0.05, 0.5)


@settings(max_examples=300, deadline=None)
@given(lengths, lengths, st.floats(0.0, 1.0), st.floats(-math.pi, math.pi))
def test_ik_round_trip(thigh, shank, s, phi):
    g = RobotGeometry(thigh_len=thigh, shank_len=shank)
    lo, hi = abs(thigh - shank), thigh + shank
    r = lo + (hi - lo) * s
    if r < 1e-3 * hi:
        return
    target = (r * math.sin(phi), r * math.cos(phi))
    hip, knee = ik_sagittal(target, g)
    assert 0.0 <= knee <= math.pi
    x, y = fk_oracle(hip, knee, thigh, shank)
    assert math.hypot(x - target[0], y - target[1]) < 1e-9 * (thigh + shank)


def test_ik_terms_match_triangle(geom):
    t = ik_terms(SagittalTarget(0.03, 0.2), geom)
    assert t.hyp == pytest.approx(math.hypot(0.03, 0.2))
    assert t.alpha == pytest.approx(math.atan2(0.03, 0.2))
    # angles of a triangle sum to pi
    third = math.pi - t.beta - t.gamma
    assert math.sin(t.beta) / geom.shank_len == pytest.approx(math.sin(third) / geom.thigh_len)


def test_ik_continuity(geom, rng):
    for _ in range(200):
        r = rng.uniform(0.3, 0.95) * geom.leg_len
        phi = rng.uniform(-1.0, 1.0)
        p = np.array([r * math.sin(phi), r * math.cos(phi)])
        d = rng.normal(size=2)
        q = p + 1e-6 * d / np.linalg.norm(d)
        a = np.array(ik_sagittal(p, geom))
        b = np.array(ik_sagittal(q, geom))
        assert np.max(np.abs(a - b)) < 1e-3


# ---------------------------------------------------------------- ankle

def test_ankle_flat_examples():
    assert ankle_pitch_flat(0.0, 0.0) == 0.0
    assert ankle_pitch_flat(0.3, 0.5) == pytest.approx(-0.8, abs=1e-15)


def test_ankle_intersection_matches_sum():
    assert ankle_pitch_intersection(0.2, 0.4) == pytest.approx(-0.6, abs=1e-9)
    assert ankle_pitch_intersection(-0.45, 0.9, 0.12, 0.12) == pytest.approx(-0.45, abs=1e-9)


def test_ankle_intersection_vertical_shank():
    with pytest.raises(ValueError):
        ankle_pitch_intersection(-0.3, 0.3)


def test_flat_foot_sum_exact(rng):
    for hip, knee in rng.uniform([-1, 0], [1, 2], size=(100, 2)):
        assert hip + knee + ankle_pitch_flat(hip, knee) == 0.0


# ---------------------------------------------------------------- sway

def test_sway_zero():
    assert lateral_sway_angles(0.0) == ((0.0, 0.0), (0.0, 0.0))


def test_sway_fig16_constant():
    left, right = lateral_sway_angles(0.15)
    assert left == (0.15, -0.15) and right == (0.15, -0.15)


def test_sway_mirror():
    a = lateral_sway_angles(0.1)
    b = lateral_sway_angles(-0.1)
    assert b[0] == (-a[0][0], -a[0][1])


def test_sway_rejects_right_angle():
    with pytest.raises(InvalidParams):
        lateral_sway_angles(math.pi / 2)


def _swayed_pose(theta, geom, crouch):
    hip, knee = ik_sagittal((0.0, crouch), geom)
    (lh, la), (rh, ra) = lateral_sway_angles(theta)
    leg = dict(hip_pitch=hip, knee_pitch=knee, ankle_pitch=ankle_pitch_flat(hip, knee))
    return JointPose(LegAngles(**leg, hip_roll=lh, ankle_roll=la),
                     LegAngles(**leg, hip_roll=rh, ankle_roll=ra))


@pytest.mark.parametrize("theta", [0.15, -0.15, 0.3])
def test_sway_keeps_pelvis_level_and_feet_flat(theta, geom):
    crouch = 0.2
    wp0 = world_pose(_swayed_pose(0.0, geom, crouch), geom, Anchor(Side.RIGHT))
    wp = world_pose(_swayed_pose(theta, geom, crouch), geom, Anchor(Side.RIGHT))
    # level pelvis: both hips at the same height
    assert wp.left_hip[2] == pytest.approx(wp.right_hip[2], abs=1e-12)
    assert wp.left.height == pytest.approx(0.0, abs=1e-12)
    drop = wp0.pelvis[2] - wp.pelvis[2]
    assert drop == pytest.approx(crouch * (1 - math.cos(theta)), abs=1e-12)
    assert -(wp.pelvis[1] - wp0.pelvis[1]) == pytest.approx(crouch * math.sin(theta), abs=1e-12)


def test_sway_drop_even(geom):
    hs = []
    for th in (0.12, -0.12):
        wp = world_pose(_swayed_pose(th, geom, 0.2), geom, Anchor(Side.LEFT))
        hs.append(wp.pelvis[2])
    assert hs[0] == pytest.approx(hs[1], abs=1e-15)


# ---------------------------------------------------------------- hip advance

def test_hip_advance_examples():
    assert hip_advance_targets(SagittalTarget(0.05, 0.20), 0.05) == (0.0, 0.20)
    assert hip_advance_targets(SagittalTarget(0.05, 0.20), 0.0) == (0.05, 0.20)
    got = hip_advance_targets([SagittalTarget(0.02, 0.21)], 0.03)[0]
    assert got.x == pytest.approx(-0.01, abs=1e-15) and got.y == 0.21


def test_geometry_validation():
    with pytest.raises(InvalidParams):
        RobotGeometry(thigh_len=0.0)
    with pytest.raises(InvalidParams):
        RobotGeometry(com_height_offset=-0.1)
    RobotGeometry(foot_fwd_offset=-0.01)


@pytest.mark.parametrize("thigh,shank", [(0.12, 0.12), (0.15, 0.10), (0.10, 0.15)])
@pytest.mark.parametrize("phi", [0.0, 0.7, -1.2])
def test_ik_exact_workspace_boundaries(thigh, shank, phi):
    g = RobotGeometry(thigh_len=thigh, shank_len=shank)
    for r, knee_want in ((thigh + shank, 0.0), (abs(thigh - shank), math.pi)):
        if r == 0.0:
            continue
        target = (r * math.sin(phi), r * math.cos(phi))
        hip, knee = ik_sagittal(target, g)
        assert knee == pytest.approx(knee_want, abs=1e-7)
        x, y = fk_oracle(hip, knee, thigh, shank)
        assert math.hypot(x - target[0], y - target[1]) < 1e-9 * (thigh + shank)
