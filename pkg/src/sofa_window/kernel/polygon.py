"""Convex planar polygons: hull, caliper width, rectangle fitting, slab intercepts."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..tolerances import EPS_GEOM

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class Polygon2:
    """Convex polygon with CCW vertices.

    One or two vertices denote a degenerate (point or segment) polygon; zero
    vertices is the empty polygon.
    """

    vertices: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=float).reshape(-1, 2)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def empty(self) -> bool:
        return len(self.vertices) == 0

    @property
    def degenerate(self) -> bool:
        return len(self.vertices) < 3

    def __len__(self) -> int:
        return len(self.vertices)

    def area(self) -> float:
        if self.degenerate:
            return 0.0
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))

    def extent(self, u) -> tuple[float, float]:
        if self.empty:
            raise ValueError("empty polygon has no extent")
        proj = self.vertices @ np.asarray(u, dtype=float)
        return float(proj.min()), float(proj.max())

    def rotated(self, theta: float) -> Polygon2:
        c, s = math.cos(theta), math.sin(theta)
        return Polygon2(self.vertices @ np.array([[c, s], [-s, c]]))

    def bbox(self) -> tuple[np.ndarray, np.ndarray]:
        return self.vertices.min(axis=0), self.vertices.max(axis=0)


def convex_hull_2d(points, tol: float = EPS_GEOM) -> Polygon2:
    """Andrew's monotone chain; collinear and duplicate points are dropped."""
    pts = np.unique(np.asarray(points, dtype=float).reshape(-1, 2), axis=0)
    if len(pts) == 0:
        return Polygon2(np.empty((0, 2)))
    scale = max(1.0, float(np.abs(pts).max()))
    # merge near-duplicates so that tiny slivers do not survive as edges
    keep = [pts[0]]
    for p in pts[1:]:
        if np.abs(p - keep[-1]).max() > tol * scale:
            keep.append(p)
    pts = np.array(keep)
    if len(pts) <= 2:
        if len(pts) == 2 and np.linalg.norm(pts[1] - pts[0]) <= tol * scale:
            pts = pts[:1]
        return Polygon2(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out: list[np.ndarray] = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                # drop a unless the turn o->a->p is strictly left
                if cross(o, a, p) <= tol * scale * max(np.linalg.norm(p - o), 1e-300):
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    hull = np.array(lower[:-1] + upper[:-1])
    if len(hull) < 3:
        # collinear input: keep the two extreme points
        d = pts[-1] - pts[0]
        if np.linalg.norm(d) <= tol * scale:
            return Polygon2(pts[:1])
        return Polygon2(np.array([pts[0], pts[-1]]))
    return Polygon2(hull)


def _edge_vectors(P: Polygon2) -> np.ndarray:
    v = P.vertices
    return np.roll(v, -1, axis=0) - v


def width2(P: Polygon2) -> tuple[float, np.ndarray]:
    """Minimal distance between two parallel supporting lines (rotating calipers).

    Returns the width and the unit normal of the optimal line pair.
    """
    v = P.vertices
    n = len(v)
    if n == 0:
        raise ValueError("empty polygon has no width")
    if n == 1:
        return 0.0, np.array([1.0, 0.0])
    if n == 2:
        d = v[1] - v[0]
        normal = np.array([-d[1], d[0]]) / np.linalg.norm(d)
        return 0.0, normal
    edges = _edge_vectors(P)
    lengths = np.hypot(edges[:, 0], edges[:, 1])

    def dist(i: int, k: int) -> float:
        e, w = edges[i], v[k % n] - v[i]
        return (e[0] * w[1] - e[1] * w[0]) / lengths[i]

    # antipodal pointer for edge 0, then advance monotonically
    j = max(range(n), key=lambda k: dist(0, k))
    best_w, best_i = dist(0, j), 0
    for i in range(1, n):
        steps = 0
        while dist(i, j + 1) >= dist(i, j) and steps < n:
            j += 1
            steps += 1
        w = dist(i, j)
        if w < best_w:
            best_w, best_i = w, i
    e = edges[best_i]
    normal = np.array([-e[1], e[0]]) / lengths[best_i]
    return float(best_w), normal


def directional_extent(P: Polygon2, phi) -> np.ndarray:
    """Extent of ``P`` along direction angle(s) ``phi``."""
    phi = np.atleast_1d(np.asarray(phi, dtype=float))
    u = np.stack([np.cos(phi), np.sin(phi)], axis=1)
    proj = P.vertices @ u.T
    return proj.max(axis=0) - proj.min(axis=0)


def bbox_dims(P: Polygon2, theta) -> tuple[np.ndarray, np.ndarray]:
    """Axis-aligned bounding-box width and height of ``P`` rotated CCW by ``theta``.

    Rotating by theta maps x' = <(cos t, -sin t), p>, y' = <(sin t, cos t), p>.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    return directional_extent(P, -theta), directional_extent(P, HALF_PI - theta)


def _caliper_events(P: Polygon2) -> np.ndarray:
    """Rotation angles in [0, pi) where either bbox side's support pair changes."""
    e = _edge_vectors(P) if len(P) >= 3 else np.array([P.vertices[1] - P.vertices[0]])
    phi = np.arctan2(e[:, 1], e[:, 0])
    ev = np.concatenate([HALF_PI - phi, -phi]) % math.pi
    return np.unique(np.concatenate([ev, [0.0]]))


def _sinusoid_piece(P: Polygon2, u_of_theta, theta_mid: float) -> tuple[float, float]:
    """Coefficients (p, q) with extent(theta) = p cos(theta) + q sin(theta) near theta_mid.

    ``u_of_theta(t)`` returns (c1, c2) such that the unit direction is
    cos(t) * c1 + sin(t) * c2.
    """
    c1, c2 = u_of_theta
    u = math.cos(theta_mid) * c1 + math.sin(theta_mid) * c2
    proj = P.vertices @ u
    d = P.vertices[int(np.argmax(proj))] - P.vertices[int(np.argmin(proj))]
    return float(d @ c1), float(d @ c2)


# directions of the rotated bbox axes as cos/sin combinations of theta
_X_DIR = (np.array([1.0, 0.0]), np.array([0.0, -1.0]))
_Y_DIR = (np.array([0.0, 1.0]), np.array([1.0, 0.0]))


def _roots_in(p: float, q: float, c: float, lo: float, hi: float) -> list[float]:
    """Solutions of p cos t + q sin t = c with lo < t < hi."""
    r = math.hypot(p, q)
    if r < 1e-300 or abs(c) > r:
        return []
    base = math.atan2(q, p)
    off = math.acos(max(-1.0, min(1.0, c / r)))
    out = []
    for t in (base + off, base - off):
        for k in (-2, -1, 0, 1, 2):
            s = t + 2 * math.pi * k
            if lo < s < hi:
                out.append(s)
    return out


def _rect_breakpoints(P: Polygon2, a: float, b: float) -> np.ndarray:
    """All angles in [0, pi] where the slack function can change regime or sign."""
    events = _caliper_events(P)
    events = np.concatenate([events, [math.pi]])
    pts = list(events)
    for lo, hi in zip(events[:-1], events[1:]):
        if hi - lo < 1e-15:
            continue
        mid = 0.5 * (lo + hi)
        pw, qw = _sinusoid_piece(P, _X_DIR, mid)
        ph, qh = _sinusoid_piece(P, _Y_DIR, mid)
        pts += _roots_in(pw, qw, a, lo, hi)
        pts += _roots_in(ph, qh, b, lo, hi)
        # crossing of the two slack terms: W - a = H - b
        pts += _roots_in(pw - ph, qw - qh, a - b, lo, hi)
    return np.unique(np.array(pts))


def rect_slack(P: Polygon2, a: float, b: float, theta) -> np.ndarray:
    """max(W - a, H - b) for P rotated by theta; <= 0 means it fits."""
    w, h = bbox_dims(P, theta)
    return np.maximum(w - a, h - b)


def min_rect_slack(P: Polygon2, a: float, b: float) -> tuple[float, float]:
    """Exact minimum over rotations of max(W - a, H - b), with its angle.

    On each caliper interval both bbox sides are single sinusoids, which are
    concave where positive, so the minimax sits at an interval end or where the
    two slack terms cross.
    """
    if P.empty:
        return 0.0, -math.inf
    if len(P) == 1:
        return 0.0, -min(a, b)
    cand = _rect_breakpoints(P, a, b)
    slack = rect_slack(P, a, b, cand)
    i = int(np.argmin(slack))
    return float(cand[i]), float(slack[i])


def fits_in_rect(P: Polygon2, a: float, b: float, tol: float = EPS_GEOM) -> float | None:
    """A rotation angle putting P's bbox within a x b, or None when impossible."""
    theta, slack = min_rect_slack(P, a, b)
    return theta if slack <= tol else None


def feasible_angle_intervals(
    P: Polygon2, a: float, b: float, tol: float = EPS_GEOM
) -> list[tuple[float, float]]:
    """Closed angle intervals in [0, pi) on which P rotated fits into a x b."""
    if P.empty or len(P) == 1:
        return [(0.0, math.pi)] if (P.empty or min(a, b) >= -tol) else []
    bp = _rect_breakpoints(P, a, b)
    bp = np.unique(np.concatenate([[0.0], bp, [math.pi]]))
    mids = 0.5 * (bp[:-1] + bp[1:])
    ok_pts = rect_slack(P, a, b, bp) <= tol
    ok_mid = rect_slack(P, a, b, mids) <= tol
    out: list[list[float]] = []
    is_open = False
    for k in range(len(bp)):
        if ok_pts[k] and not is_open:
            out.append([float(bp[k]), float(bp[k])])
            is_open = True
        elif not ok_pts[k]:
            is_open = False
        if k == len(mids):
            break
        if ok_mid[k]:
            if not is_open:
                out.append([float(bp[k]), float(bp[k])])
            out[-1][1] = float(bp[k + 1])
            is_open = bool(ok_pts[k + 1])
        else:
            is_open = False
    return [(lo, hi) for lo, hi in out]


def min_xslab(P: Polygon2) -> tuple[float, float]:
    """Minimum horizontal intercept length of a slab containing P.

    Slabs are bounded by two parallel lines at angle theta in (0, pi); the
    intercept on the x-axis is w_perp(theta) / sin(theta). Inside each caliper
    interval the ratio is monotone, so only edge directions (and the vertical)
    are evaluated. Returns (ratio, theta).
    """
    if P.empty:
        raise ValueError("empty polygon")
    if len(P) == 1:
        return 0.0, HALF_PI
    e = _edge_vectors(P) if len(P) >= 3 else np.array([P.vertices[1] - P.vertices[0]])
    th = np.arctan2(e[:, 1], e[:, 0]) % math.pi
    th = np.unique(np.concatenate([th, [HALF_PI]]))
    th = th[np.sin(th) > 1e-12]
    wperp = directional_extent(P, th + HALF_PI)
    ratio = wperp / np.sin(th)
    i = int(np.argmin(ratio))
    return float(ratio[i]), float(th[i])


def xslab_ratio(P: Polygon2, theta) -> np.ndarray:
    """Horizontal intercept length of the tightest slab at angle theta."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    return directional_extent(P, theta + HALF_PI) / np.abs(np.sin(theta))
