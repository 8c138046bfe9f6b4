"""Ground-plane polygon helpers: convex hull and signed distance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DegeneratePolygon


@dataclass(frozen=True)
class SupportPolygon:
    """Convex polygon, counter-clockwise, no repeated or collinear vertices."""

    vertices: np.ndarray

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def area(self) -> float:
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points) -> SupportPolygon:
    """Convex hull by Andrew's monotone chain.

    The result starts at the lowest-x (then lowest-y) point and runs
    counter-clockwise.  Collinear boundary points are dropped.  Raises
    :class:`DegeneratePolygon` for fewer than three distinct points or when
    all points are collinear.
    """
    pts = sorted(set(map(tuple, np.asarray(points, dtype=np.float64).reshape(-1, 2).tolist())))
    if len(pts) < 3:
        raise DegeneratePolygon(f"need 3 distinct points, got {len(pts)}")

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegeneratePolygon("all points are collinear")
    return SupportPolygon(np.array(hull))


def signed_margin(p, poly: SupportPolygon) -> float:
    """Distance from ``p`` to the polygon boundary, positive inside."""
    v = poly.vertices
    return float(kernels.polygon_margins(np.asarray(p, dtype=np.float64).reshape(1, 2),
                                         v[None], [len(v)])[0])


def signed_margins(points, polys: list[SupportPolygon]) -> np.ndarray:
    """Vectorised :func:`signed_margin` over paired points and polygons."""
    m = max(len(p) for p in polys)
    verts = np.zeros((len(polys), m, 2))
    for i, poly in enumerate(polys):
        verts[i, :len(poly)] = poly.vertices
    return kernels.polygon_margins(points, verts, [len(p) for p in polys])
