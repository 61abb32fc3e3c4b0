"""Gates, fixed-orientation translation, and shadow-width diagnostics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePrism
from .kernel import (
    Polytope,
    RigidPlacement,
    convex_hull_2d,
    project_shadow,
    rotation_taking,
    shadow_frame,
    unit,
    width2,
    width3,
    min_xslab,
)
from .motion.path import MotionPath, slide_through
from .sampling import fibonacci_sphere, refine_direction
from .sliding import SlidingWitness, default_clearance, verify_witness
from .tolerances import EPS_GEOM

DOWN = np.array([0.0, 0.0, -1.0])


@dataclass(frozen=True)
class GateWitness:
    """Slab normal of minimal width and a placement above the gate 0 <= x <= a."""

    normal: np.ndarray
    width: float
    orientation: RigidPlacement

    def path(self, K: Polytope) -> MotionPath:
        return slide_through(K.vertices, self.orientation, DOWN, default_clearance(K))


def gate_feasible(K: Polytope, a: float, tol: float = EPS_GEOM) -> GateWitness | None:
    """K passes the gate of width a iff its minimal width is at most a."""
    if not a > 0:
        raise ValueError("a must be > 0")
    w, n = width3(K)
    if w > a + tol:
        return None
    R = rotation_taking(n, [1.0, 0.0, 0.0])
    pts = K.vertices @ R.T
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    clearance = default_clearance(K)
    t = np.array([0.5 * a - 0.5 * (lo[0] + hi[0]), -0.5 * (lo[1] + hi[1]), clearance - lo[2]])
    return GateWitness(unit(n), w, RigidPlacement(R, t))


@dataclass(frozen=True)
class SlideLine:
    """Line through the reference vertex along the prism axis; ``placement`` starts above."""

    point: np.ndarray
    direction: np.ndarray
    placement: RigidPlacement
    ratios: tuple[float, float]

    def path(self, K: Polytope) -> MotionPath:
        return slide_through(K.vertices, self.placement, self.direction, default_clearance(K))


def _slab(points2: np.ndarray, gate: float, tol: float):
    """Tightest slab in a vertical plane; returns (ratio, normal, shift) or None."""
    P = convex_hull_2d(points2)
    ratio, theta = min_xslab(P)
    if ratio > gate + tol:
        return None
    n = np.array([-np.sin(theta), np.cos(theta)])
    proj = P.vertices @ n
    # where the two bounding lines cross the horizontal axis
    centre = 0.5 * (proj.min() + proj.max()) / n[0]
    return ratio, n, 0.5 * gate - centre


def fixed_orientation_slide(
    K: Polytope, R, a: float, b: float, tol: float = EPS_GEOM
) -> SlideLine | None:
    """A translation line for K rotated by R through [0,a] x [0,b], keeping the rotation."""
    if not (a > 0 and b > 0):
        raise ValueError("a and b must be > 0")
    rot = RigidPlacement(R).rotation
    pts = K.vertices @ rot.T
    sa = _slab(pts[:, [0, 2]], a, tol)
    if sa is None:
        return None
    sb = _slab(pts[:, [1, 2]], b, tol)
    if sb is None:
        return None
    na = np.array([sa[1][0], 0.0, sa[1][1]])
    nb = np.array([0.0, sb[1][0], sb[1][1]])
    axis = np.cross(na, nb)
    if np.linalg.norm(axis) < 1e-12 or abs(axis[2]) < 1e-12:
        raise DegeneratePrism("slab normals are parallel")
    axis = unit(axis)
    if axis[2] > 0:
        axis = -axis
    centred = pts + np.array([sa[2], sb[2], 0.0])
    ref = int(np.lexsort(K.vertices.T[::-1])[0])
    # start with every vertex above the window plane
    back = (default_clearance(K) - centred[:, 2].min()) / -axis[2]
    start = RigidPlacement(rot, np.array([sa[2], sb[2], 0.0]) - max(back, 0.0) * axis)
    return SlideLine(centred[ref], axis, start, (sa[0], sb[0]))


@dataclass(frozen=True)
class WidthMax:
    value: float
    direction: np.ndarray
    grid_value: float
    samples: int


def shadow_width(K: Polytope, v) -> float:
    return width2(project_shadow(K, v))[0]


def projection_width_max(K: Polytope, resolution: int = 4000, refine: int = 8) -> WidthMax:
    """Largest shadow width over projection directions (grid plus local refinement).

    Approximate: each sampled value is exact for its direction, the maximum
    is only as good as the grid and the refinement.
    """
    if resolution < 100:
        raise ValueError("resolution must be >= 100")
    dirs = fibonacci_sphere(resolution, hemisphere=True)
    vals = np.array([shadow_width(K, v) for v in dirs])
    order = np.argsort(-vals, kind="stable")[:refine]
    step = 2.0 / np.sqrt(resolution)
    best_v, best = dirs[order[0]], float(vals[order[0]])
    for i in order:
        v, f = refine_direction(lambda u: -shadow_width(K, u), dirs[i], step)
        if -f > best:
            best_v, best = v, -f
    return WidthMax(best, best_v, float(vals.max()), resolution)


def slide_trade(K: Polytope, a: float, b: float, tol: float = EPS_GEOM) -> SlidingWitness | None:
    """Witness for the min(a,b) x hypot(a,b) rectangle when K passes the min(a,b) gate.

    x is the minimal-width direction; turning about it, y is chosen as the
    width direction of the shadow along x. The returned axes are checked.
    """
    short, long_ = min(a, b), float(np.hypot(a, b))
    gate = gate_feasible(K, short, tol)
    if gate is None:
        return None
    x = gate.normal
    _, n2 = width2(project_shadow(K, x))
    ex, ey = shadow_frame(x)
    w = SlidingWitness(x, n2[0] * ex + n2[1] * ey)
    return w if verify_witness(K, w, short, long_, tol) else None
