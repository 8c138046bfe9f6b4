"""Top-down SVG of a walk: footprints, support polygons and the CoM path."""

from __future__ import annotations

import xml.etree.ElementTree as ET

import numpy as np

from .planner import Side, Trajectory, contact_flags
from .stability import support_polygon, trace_world

SCALE = 1000.0  # SVG user units per metre
PAD = 20.0
STYLE = {
    Side.LEFT: "fill:#9ecae1;fill-opacity:0.6;stroke:#3182bd;stroke-width:0.8",
    Side.RIGHT: "fill:#fdae6b;fill-opacity:0.6;stroke:#e6550d;stroke-width:0.8",
    "support": "fill:none;stroke:#636363;stroke-width:0.6;stroke-dasharray:3,2",
    "com": "fill:none;stroke:#e6c200;stroke-width:1.5",
}


def _xy(p) -> tuple[float, float]:
    # world y points left; SVG y points down, so left ends up at the top.
    # rounding then adding 0.0 keeps "-0.000" out of the file
    return round(p[0] * SCALE, 3) + 0.0, round(-p[1] * SCALE, 3) + 0.0


def _points(pts) -> str:
    return " ".join("{:.3f},{:.3f}".format(*_xy(p)) for p in pts)


def foot_placements(world, side: Side) -> list[np.ndarray]:
    """Distinct ground footprints of one foot, in the order they occur."""
    out: list[np.ndarray] = []
    for wp in world:
        f = wp.foot(side)
        if not f.in_contact:
            continue
        if out and np.allclose(out[-1], f.corners, atol=1e-6):
            continue
        if any(np.allclose(p, f.corners, atol=1e-6) for p in out):
            continue
        out.append(f.corners)
    return out


def render_svg(traj: Trajectory, geom) -> str:
    flags = contact_flags(traj.phases, traj.times)
    world = trace_world(traj.samples, flags, geom)
    com = np.array([wp.com_xy for wp in world])

    boundary = []
    for ph in traj.phases:
        i = int(np.searchsorted(traj.times, ph.start - 1e-12))
        if i < len(world):
            boundary.append(support_polygon(world[i]).vertices)

    allpts = np.vstack([com] + [wp.left.corners for wp in world] + [wp.right.corners for wp in world])
    xs = allpts[:, 0] * SCALE
    ys = -allpts[:, 1] * SCALE
    x0, y0 = xs.min() - PAD, ys.min() - PAD
    w, h = xs.max() - xs.min() + 2 * PAD, ys.max() - ys.min() + 2 * PAD

    svg = ET.Element("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "version": "1.1",
        "viewBox": f"{x0:.3f} {y0:.3f} {w:.3f} {h:.3f}",
        "width": f"{w:.0f}",
        "height": f"{h:.0f}",
    })
    ET.SubElement(svg, "title").text = "walk, top view (x forward, left foot up)"
    ET.SubElement(svg, "rect", {"x": f"{x0:.3f}", "y": f"{y0:.3f}",
                                "width": f"{w:.3f}", "height": f"{h:.3f}", "fill": "white"})
    feet = ET.SubElement(svg, "g", {"id": "footprints"})
    for side in (Side.LEFT, Side.RIGHT):
        for k, corners in enumerate(foot_placements(world, side)):
            ET.SubElement(feet, "polygon", {"class": f"foot {side.value}",
                                            "id": f"{side.value}-{k}",
                                            "points": _points(corners),
                                            "style": STYLE[side]})
    sup = ET.SubElement(svg, "g", {"id": "support"})
    for k, verts in enumerate(boundary):
        ET.SubElement(sup, "polygon", {"class": "support", "id": f"support-{k}",
                                       "points": _points(verts), "style": STYLE["support"]})
    ET.SubElement(svg, "polyline", {"id": "com-path", "points": _points(com), "style": STYLE["com"]})
    for name, p in (("com-start", com[0]), ("com-end", com[-1])):
        cx, cy = _xy(p)
        ET.SubElement(svg, "circle", {"id": name, "cx": f"{cx:.3f}", "cy": f"{cy:.3f}",
                                      "r": "2", "fill": "#e6c200"})
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"
