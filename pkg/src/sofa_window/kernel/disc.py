"""Smallest enclosing disc by randomized incremental construction."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from ..tolerances import EPS_GEOM
from .polygon import Polygon2


@dataclass(frozen=True)
class Disc:
    center: tuple[float, float]
    radius: float

    def __post_init__(self) -> None:
        if not self.radius >= 0:
            raise ValueError("radius must be >= 0")

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    def contains(self, p, tol: float = EPS_GEOM) -> bool:
        return math.dist(self.center, (float(p[0]), float(p[1]))) <= self.radius + tol


# relative slack used while building; keeps the incremental invariant stable
_BUILD_EPS = 1e-12


def _inside(c: tuple[float, float, float], p: tuple[float, float]) -> bool:
    return math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] * (1 + _BUILD_EPS) + _BUILD_EPS


def _diametral(p, q) -> tuple[float, float, float]:
    cx, cy = 0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])
    return cx, cy, max(math.hypot(cx - p[0], cy - p[1]), math.hypot(cx - q[0], cy - q[1]))


def _circumcircle(a, b, c) -> tuple[float, float, float] | None:
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if d == 0:
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    x = ox + (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    y = oy + (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    r = max(math.hypot(x - p[0], y - p[1]) for p in (a, b, c))
    return x, y, r


def _with_two(points, p, q):
    circ = _diametral(p, q)
    left = right = None
    px, py = p
    qx, qy = q
    for r in points:
        if _inside(circ, r):
            continue
        cross = (qx - px) * (r[1] - py) - (qy - py) * (r[0] - px)
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        side = (qx - px) * (c[1] - py) - (qy - py) * (c[0] - px)
        if cross > 0 and (left is None or side > (qx - px) * (left[1] - py) - (qy - py) * (left[0] - px)):
            left = c
        elif cross < 0 and (right is None or side < (qx - px) * (right[1] - py) - (qy - py) * (right[0] - px)):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _with_one(points, p):
    c = (p[0], p[1], 0.0)
    for i, q in enumerate(points):
        if not _inside(c, q):
            c = _diametral(p, q) if c[2] == 0.0 else _with_two(points[: i + 1], p, q)
    return c


def enclosing_disc(points, seed: int = 0) -> Disc:
    """Minimal disc containing the points (or a Polygon2's vertices).

    Expected linear time; the shuffle is seeded so results are reproducible.
    """
    if isinstance(points, Polygon2):
        points = points.vertices
    pts = [(float(x), float(y)) for x, y in np.asarray(points, dtype=float).reshape(-1, 2)]
    if not pts:
        raise ValueError("enclosing_disc needs at least one point")
    random.Random(seed).shuffle(pts)
    c = None
    for i, p in enumerate(pts):
        if c is None or not _inside(c, p):
            c = _with_one(pts[: i + 1], p)
    return Disc((c[0], c[1]), c[2])


def support_points(disc: Disc, points, tol: float = EPS_GEOM) -> np.ndarray:
    """Input points lying on the disc boundary."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    d = np.hypot(pts[:, 0] - disc.center[0], pts[:, 1] - disc.center[1])
    return pts[np.abs(d - disc.radius) <= tol * max(1.0, disc.radius)]
