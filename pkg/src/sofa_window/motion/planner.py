"""Grid search over (crossing depth, turn about z) with per-slice centering.

The body keeps a base rotation, may turn about the vertical axis and is
translated freely; for every slice the horizontal offset is chosen to centre
the slice in the window, so only depth and turn are searched.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from ..kernel import (
    Polytope,
    RigidPlacement,
    convex_hull_2d,
    enclosing_disc,
    feasible_angle_intervals,
)
from ..kernel.polytope import section_points
from ..tolerances import EPS_GEOM
from .path import KeyframeStage, MotionPath, TranslateStage
from .windows import Circle, ConvexPolygon, Gate, Rect, WindowSpec, config_free

_BIG = 1e6


def _period(W: WindowSpec) -> float:
    return 2 * math.pi if isinstance(W, ConvexPolygon) else math.pi


def _offset(pts: np.ndarray, theta: float, W: WindowSpec, tol: float):
    """Horizontal shift placing the rotated slice in W, or None when it cannot fit."""
    if len(pts) == 0:
        return np.zeros(2)
    c, s = math.cos(theta), math.sin(theta)
    q = pts @ np.array([[c, s], [-s, c]])
    lo, hi = q.min(axis=0), q.max(axis=0)
    if isinstance(W, Rect):
        if hi[0] - lo[0] > W.a + tol or hi[1] - lo[1] > W.b + tol:
            return None
        return np.array([0.5 * W.a, 0.5 * W.b]) - 0.5 * (lo + hi)
    if isinstance(W, Gate):
        if hi[0] - lo[0] > W.a + tol:
            return None
        return np.array([0.5 * W.a - 0.5 * (lo[0] + hi[0]), -0.5 * (lo[1] + hi[1])])
    if isinstance(W, Circle):
        disc = enclosing_disc(q)
        if disc.diameter > W.d + tol:
            return None
        return np.asarray(W.center) - np.asarray(disc.center)
    # convex polygon: maximise the worst slack of a translate (a small LP)
    n, off = W._normals, W._offsets
    h = (q @ n.T).max(axis=0)
    res = linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=np.hstack([n, np.ones((len(n), 1))]),
        b_ub=off - h,
        bounds=[(None, None), (None, None), (None, _BIG)],
        method="highs",
    )
    if res.status != 0 or -res.fun < -tol:
        return None
    return res.x[:2]


def _angle_intervals(P, W: WindowSpec, tol: float):
    """Exact feasible turn intervals when available (rectangles and gates)."""
    if isinstance(W, Rect):
        return feasible_angle_intervals(P, W.a, W.b, tol)
    if isinstance(W, Gate):
        return feasible_angle_intervals(P, W.a, _BIG, tol)
    return None


@dataclass(frozen=True)
class PlanResult:
    path: MotionPath
    nodes: list[tuple[float, float]]
    knots_per_edge: int


def planner_2dof(
    K: Polytope,
    W: WindowSpec,
    z_steps: int = 64,
    theta_steps: int = 64,
    base_rotation=None,
    knots_per_edge: int = 8,
    clearance: float = 0.01,
    tol: float = EPS_GEOM,
) -> PlanResult | None:
    """Breadth-first search from 'above' to 'below' over a (depth, turn) grid.

    Every emitted edge is checked at four times its keyframe density with the
    same sampling that ``validate_path`` uses. ``None`` only means the grid
    found no path.
    """
    if z_steps < 8 or theta_steps < 8:
        raise ValueError("grid sizes must be >= 8")
    R0 = np.eye(3) if base_rotation is None else RigidPlacement(base_rotation).rotation
    V = K.vertices @ R0.T
    zlo, zhi = float(V[:, 2].min()), float(V[:, 2].max())
    depths = np.unique(np.concatenate([np.linspace(zlo, zhi, z_steps), V[:, 2]]))
    period = _period(W)
    dtheta = period / theta_steps
    grid_theta = np.arange(theta_steps) * dtheta

    def slice_at(z: float) -> np.ndarray:
        return section_points(V - np.array([0.0, 0.0, z]), K.edges, tol)

    # free nodes per depth: grid angles inside the feasible set, plus interval midpoints
    layers: list[list[float]] = []
    for z in depths:
        pts = slice_at(z)
        P = convex_hull_2d(pts) if len(pts) else None
        ivals = _angle_intervals(P, W, tol) if P is not None and len(P) else None
        if ivals is not None:
            thetas = [float(t) for t in grid_theta if any(lo - 1e-12 <= t % math.pi <= hi + 1e-12 for lo, hi in ivals)]
            thetas += [0.5 * (lo + hi) for lo, hi in ivals]
        else:
            thetas = [float(t) for t in grid_theta if _offset(pts, float(t), W, tol) is not None]
        layers.append(sorted(set(round(t, 12) for t in thetas)))
    if any(not layer for layer in layers):
        return None

    def knot(z: float, th: float):
        off = _offset(slice_at(z), th, W, tol)
        if off is None:
            return None
        return (off[0], off[1], -z, th)

    def edge(a: tuple[float, float], b: tuple[float, float]) -> KeyframeStage | None:
        knots = []
        for s in np.linspace(0.0, 1.0, knots_per_edge + 1):
            k = knot((1 - s) * a[0] + s * b[0], (1 - s) * a[1] + s * b[1])
            if k is None:
                return None
            knots.append(k)
        st = KeyframeStage(R0, knots)
        for s in np.linspace(0.0, 1.0, 4 * knots_per_edge):
            if not config_free(K, st.at(float(s)), W, tol).free:
                return None
        return st

    def nearest_turn(t0: float, t1: float) -> float:
        # shortest representative of t1 relative to t0 (angles are periodic)
        d = (t1 - t0 + 0.5 * period) % period - 0.5 * period
        return t0 + d

    start = [(0, j) for j in range(len(layers[0]))]
    parent: dict[tuple[int, int], tuple[tuple[int, int], KeyframeStage] | None] = {n: None for n in start}
    theta_of: dict[tuple[int, int], float] = {n: layers[0][n[1]] for n in start}
    queue = deque(start)
    goal = None
    last = len(depths) - 1
    while queue:
        node = queue.popleft()
        i, j = node
        if i == last:
            goal = node
            break
        th = theta_of[node]
        cand = []
        for jj, t in enumerate(layers[i + 1]):
            tt = nearest_turn(th, t)
            if abs(tt - th) <= 1.5 * dtheta:
                cand.append(((i + 1, jj), tt))
        for jj in (j - 1, j + 1):
            if 0 <= jj < len(layers[i]):
                tt = nearest_turn(th, layers[i][jj])
                if abs(tt - th) <= 1.5 * dtheta:
                    cand.append(((i, jj), tt))
        cand.sort(key=lambda c: (-c[0][0], abs(c[1] - th)))
        for nxt, tt in cand:
            if nxt in parent:
                continue
            st = edge((depths[i], th), (depths[nxt[0]], tt))
            if st is None:
                continue
            parent[nxt] = (node, st)
            theta_of[nxt] = tt
            queue.append(nxt)
    if goal is None:
        return None

    stages, nodes = [], []
    cur = goal
    while parent[cur] is not None:
        prev, st = parent[cur]
        stages.append(st)
        nodes.append((float(depths[cur[0]]), theta_of[cur]))
        cur = prev
    nodes.append((float(depths[cur[0]]), theta_of[cur]))
    stages.reverse()
    nodes.reverse()
    first, final = stages[0].start(), stages[-1].end()
    up = np.array([0.0, 0.0, clearance])
    entry = TranslateStage(first.rotation, first.translation + up, first.translation)
    exit_ = TranslateStage(final.rotation, final.translation, final.translation - up)
    return PlanResult(MotionPath((entry, *stages, exit_)), nodes, knots_per_edge)


__all__ = ["PlanResult", "planner_2dof"]
