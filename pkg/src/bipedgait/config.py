"""Run configuration: YAML file <-> dataclasses, with strict key checking."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import yaml

from .errors import ConfigError, GaitError
from .kinematics import RobotGeometry
from .planner import GaitParams, Side
from .stability import DEFAULT_THRESHOLD

_SECTIONS = ("geometry", "gait", "check", "output")
_OUTPUT_KEYS = ("trajectory", "report", "svg")


@dataclass(frozen=True)
class RunConfig:
    geometry: RobotGeometry = field(default_factory=RobotGeometry)
    gait: GaitParams = field(default_factory=GaitParams)
    threshold: float = DEFAULT_THRESHOLD
    outputs: dict = field(default_factory=lambda: {"trajectory": "walk.csv",
                                                   "report": None, "svg": None})

    def resolved(self) -> "RunConfig":
        return replace(self, gait=self.gait.resolved(self.geometry))

    def plan_dict(self) -> dict:
        """Everything that determines the planned trajectory."""
        gait = asdict(self.gait.resolved(self.geometry))
        gait["lead_leg"] = gait["lead_leg"].value
        return {"geometry": asdict(self.geometry), "gait": gait}

    def to_dict(self) -> dict:
        d = self.plan_dict()
        d["check"] = {"threshold": self.threshold}
        d["output"] = dict(self.outputs)
        return d

    def content_hash(self) -> str:
        blob = json.dumps(self.plan_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _build(cls, section: str, data) -> object:
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"[{section}] must be a mapping")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in [{section}]: {', '.join(unknown)}")
    try:
        return cls(**data)
    except (GaitError, TypeError, ValueError) as exc:
        raise ConfigError(f"[{section}] {exc}") from exc


def config_from_dict(data) -> RunConfig:
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("config root must be a mapping")
    unknown = sorted(set(data) - set(_SECTIONS))
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(unknown)}")
    geom = _build(RobotGeometry, "geometry", data.get("geometry"))
    gait_data = dict(data.get("gait") or {})
    if "lead_leg" in gait_data:
        try:
            gait_data["lead_leg"] = Side(gait_data["lead_leg"])
        except ValueError as exc:
            raise ConfigError("[gait] lead_leg must be 'left' or 'right'") from exc
    gait = _build(GaitParams, "gait", gait_data)

    check = data.get("check") or {}
    if not isinstance(check, dict) or set(check) - {"threshold"}:
        raise ConfigError("[check] accepts only 'threshold'")
    threshold = check.get("threshold", DEFAULT_THRESHOLD)
    if not isinstance(threshold, (int, float)) or isinstance(threshold, bool):
        raise ConfigError("[check] threshold must be a number")

    output = data.get("output") or {}
    if not isinstance(output, dict) or set(output) - set(_OUTPUT_KEYS):
        raise ConfigError(f"[output] accepts only {', '.join(_OUTPUT_KEYS)}")
    outputs = RunConfig().outputs | output
    return RunConfig(geom, gait, float(threshold), outputs).resolved()


def load_config(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig().resolved()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"config {path} is not valid YAML: {exc}") from exc
    return config_from_dict(data)


def dump_config(cfg: RunConfig) -> str:
    return yaml.safe_dump(cfg.to_dict(), sort_keys=False)
