"""Command-line front end.

Exit codes: 0 pass, 1 stability failure, 2 config error, 3 infeasible plan,
4 malformed input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import io
from .config import RunConfig, config_from_dict, dump_config, load_config
from .errors import (
    ConfigError,
    DegenerateGeometry,
    GaitError,
    InvalidParams,
    MalformedTrajectory,
    NoContact,
    Unreachable,
)
from .planner import plan_walk
from .stability import check_trajectory
from .svg import render_svg

EXIT_OK = 0
EXIT_UNSTABLE = 1
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_MALFORMED = 4

_GAIT_FLAGS = {
    "steps": "n_steps",
    "step_length": "step_length",
    "step_height": "step_height",
    "sway": "sway_angle",
    "rate": "sample_rate",
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="YAML run configuration")
    p.add_argument("--steps", type=int, metavar="N", help="number of full steps")
    p.add_argument("--step-length", type=float, metavar="M")
    p.add_argument("--step-height", type=float, metavar="M")
    p.add_argument("--sway", type=float, metavar="RAD", help="lateral sway roll angle")
    p.add_argument("--rate", type=float, metavar="HZ", help="sample rate")
    p.add_argument("--threshold", type=float, metavar="M", help="minimum stability margin")
    p.add_argument("--out", metavar="PATH", help="output file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bipedgait",
                                     description="Statically stable biped walk planner and checker.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("plan", help="plan a walk and write trajectory CSV + manifest")
    _common(p)
    p = sub.add_parser("check", help="verify a trajectory against the support-polygon criterion")
    p.add_argument("trajectory")
    _common(p)
    p = sub.add_parser("render", help="draw the walk from above as SVG")
    p.add_argument("trajectory")
    _common(p)
    p = sub.add_parser("config", help="print the effective configuration")
    p.add_argument("--dump", action="store_true", required=True)
    _common(p)
    return parser


def _overrides_given(args) -> bool:
    return args.config is not None or any(getattr(args, k) is not None for k in _GAIT_FLAGS)


def _apply_flags(cfg: RunConfig, args) -> RunConfig:
    gait = {v: getattr(args, k) for k, v in _GAIT_FLAGS.items() if getattr(args, k) is not None}
    try:
        if gait:
            cfg = replace(cfg, gait=replace(cfg.gait, **gait))
    except GaitError as exc:
        raise ConfigError(str(exc)) from exc
    if args.threshold is not None:
        cfg = replace(cfg, threshold=args.threshold)
    return cfg.resolved()


def _config_for(args, traj_path: str | None = None) -> RunConfig:
    """Resolve the configuration and, for existing trajectories, match the manifest."""
    manifest = None
    if traj_path is not None:
        mpath = io.manifest_path(traj_path)
        if mpath.exists():
            manifest = io.read_manifest(mpath)
    if manifest is not None and not _overrides_given(args):
        cfg = config_from_dict(manifest["config"])
    else:
        cfg = load_config(args.config)
    cfg = _apply_flags(cfg, args)
    if manifest is not None and manifest["config_hash"] != cfg.content_hash():
        raise ConfigError(f"configuration does not match the manifest of {traj_path} "
                          "(different geometry or gait parameters)")
    return cfg


def cmd_plan(args) -> int:
    cfg = _config_for(args)
    out = Path(args.out or cfg.outputs.get("trajectory") or "walk.csv")
    try:
        traj = plan_walk(cfg.gait, cfg.geometry)
    except (Unreachable, DegenerateGeometry) as exc:
        print(f"infeasible plan: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InvalidParams as exc:
        raise ConfigError(str(exc)) from exc
    io.write_trajectory_csv(out, traj)
    io.write_manifest(io.manifest_path(out), traj, cfg)
    print(f"wrote {out} ({len(traj)} samples, {traj.duration:g} s, {len(traj.phases)} phases)")
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = _config_for(args, args.trajectory)
    traj = io.load_trajectory(args.trajectory, cfg.gait, cfg.geometry)
    try:
        report = check_trajectory(traj, cfg.geometry, cfg.threshold)
    except NoContact as exc:
        raise MalformedTrajectory(str(exc)) from exc
    src = Path(args.trajectory)
    out = Path(args.out or cfg.outputs.get("report") or src.with_name(src.stem + ".report.csv"))
    io.write_report_csv(out, report)
    io.write_summary(out.with_suffix(".json"), report)
    if report.passed:
        print(f"PASS: min margin {report.min_margin:.6g} m at t={report.argmin_t:g} s "
              f"(threshold {report.threshold:g} m); report {out}")
        return EXIT_OK
    i = report.first_failure()
    print(f"FAIL: margin {report.margins[i]:.6g} m below threshold {report.threshold:g} m "
          f"first at sample {i} (t={report.times[i]:g} s); min margin {report.min_margin:.6g} m "
          f"at t={report.argmin_t:g} s", file=sys.stderr)
    return EXIT_UNSTABLE


def cmd_render(args) -> int:
    cfg = _config_for(args, args.trajectory)
    traj = io.load_trajectory(args.trajectory, cfg.gait, cfg.geometry)
    src = Path(args.trajectory)
    out = Path(args.out or cfg.outputs.get("svg") or src.with_suffix(".svg"))
    try:
        text = render_svg(traj, cfg.geometry)
    except NoContact as exc:
        raise MalformedTrajectory(str(exc)) from exc
    out.write_text(text)
    print(f"wrote {out}")
    return EXIT_OK


def cmd_config(args) -> int:
    cfg = _apply_flags(load_config(args.config), args)
    text = dump_config(cfg)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {"plan": cmd_plan, "check": cmd_check, "render": cmd_render, "config": cmd_config}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MalformedTrajectory as exc:
        print(f"malformed trajectory: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except GaitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
