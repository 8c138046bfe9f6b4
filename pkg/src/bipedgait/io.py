"""Trajectory, report and manifest files."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .errors import MalformedTrajectory
from .planner import GaitPhase, Trajectory, plan_phases, sample_times, total_duration

TRAJECTORY_COLUMNS = (
    "t",
    "l_hip_roll", "l_hip_pitch", "l_knee", "l_ankle_pitch", "l_ankle_roll",
    "r_hip_roll", "r_hip_pitch", "r_knee", "r_ankle_pitch", "r_ankle_roll",
)
REPORT_COLUMNS = ("t", "margin", "support")

# a larger jump between consecutive samples means a corrupted file, not a walk
MAX_JOINT_STEP = 0.5
KNEE_COLUMNS = (2, 7)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def manifest_path(traj_path: str | Path) -> Path:
    p = Path(traj_path)
    return p.with_name(p.stem + ".manifest.json")


def write_trajectory_csv(path: str | Path, traj: Trajectory) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(TRAJECTORY_COLUMNS) + "\n")
        for t, row in zip(traj.times, traj.angles):
            fh.write(",".join([_fmt(t)] + [_fmt(v) for v in row]) + "\n")


def read_trajectory_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(times, angles)``; raises :class:`MalformedTrajectory`."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except (OSError, UnicodeDecodeError) as exc:
        raise MalformedTrajectory(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise MalformedTrajectory("empty trajectory file")
    header = [c.strip() for c in rows[0]]
    if tuple(header) != TRAJECTORY_COLUMNS:
        raise MalformedTrajectory(f"bad header {rows[0]!r}")
    data = rows[1:]
    if not data:
        raise MalformedTrajectory("trajectory has no samples")
    out = np.empty((len(data), len(TRAJECTORY_COLUMNS)))
    for i, row in enumerate(data):
        if len(row) != len(TRAJECTORY_COLUMNS):
            raise MalformedTrajectory(f"expected {len(TRAJECTORY_COLUMNS)} columns, got {len(row)}", i)
        try:
            out[i] = [float(v) for v in row]
        except ValueError as exc:
            raise MalformedTrajectory(str(exc), i) from exc
    return out[:, 0].copy(), out[:, 1:].copy()


def validate_samples(times: np.ndarray, angles: np.ndarray, rate: float,
                     max_step: float = MAX_JOINT_STEP) -> None:
    """Reject non-uniform timing, non-finite values, bad knees and joint jumps."""
    for i in range(len(times)):
        if not (math.isfinite(times[i]) and np.all(np.isfinite(angles[i]))):
            raise MalformedTrajectory("non-finite value", i)
    expected = np.arange(len(times)) / rate
    off = np.flatnonzero(np.abs(times - expected) > 1e-9 * max(1.0, float(expected[-1])))
    if off.size:
        raise MalformedTrajectory(f"timestamp {float(times[off[0]])!r} off the {rate} Hz grid", int(off[0]))
    for c in KNEE_COLUMNS:
        bad = np.flatnonzero((angles[:, c] < 0.0) | (angles[:, c] > math.pi))
        if bad.size:
            raise MalformedTrajectory(f"knee angle {float(angles[bad[0], c])!r} outside [0, pi]", int(bad[0]))
    if len(angles) > 1:
        jumps = np.abs(np.diff(angles, axis=0)).max(axis=1)
        bad = np.flatnonzero(jumps > max_step)
        if bad.size:
            i = int(bad[0]) + 1
            raise MalformedTrajectory(f"joint jump of {jumps[i - 1]:.3g} rad from the previous sample", i)


def load_trajectory(path: str | Path, params, geom) -> Trajectory:
    """Read a trajectory file and attach the phase schedule implied by ``params``."""
    times, angles = read_trajectory_csv(path)
    params = params.resolved(geom)
    validate_samples(times, angles, params.sample_rate)
    phases = plan_phases(params)
    n = len(sample_times(total_duration(phases), params.sample_rate))
    if len(times) != n:
        raise MalformedTrajectory(f"{len(times)} samples, the configured walk has {n}")
    return Trajectory(times, angles, phases, geom, params, params.sample_rate)


def write_manifest(path: str | Path, traj: Trajectory, config) -> None:
    manifest = {
        "config_hash": config.content_hash(),
        "config": config.plan_dict(),
        "sample_rate": traj.sample_rate,
        "samples": len(traj),
        "total_duration": total_duration(traj.phases),
        "phases": [p.to_dict() for p in traj.phases],
    }
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def read_manifest(path: str | Path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise MalformedTrajectory(f"cannot read manifest {path}: {exc}") from exc
    if not isinstance(data, dict) or "config_hash" not in data or "config" not in data:
        raise MalformedTrajectory(f"manifest {path} lacks config_hash/config")
    return data


def manifest_phases(manifest: dict) -> list[GaitPhase]:
    return [GaitPhase.from_dict(d) for d in manifest.get("phases", [])]


def write_report_csv(path: str | Path, report) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(REPORT_COLUMNS) + "\n")
        for t, m, s in zip(report.times, report.margins, report.support):
            fh.write(f"{_fmt(t)},{_fmt(m)},{s}\n")


def write_summary(path: str | Path, report) -> None:
    Path(path).write_text(json.dumps(report.summary(), indent=2, sort_keys=True) + "\n")
