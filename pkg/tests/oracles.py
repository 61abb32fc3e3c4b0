"""Slow, independent reference computations. Only numpy and scipy, nothing from the package."""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.optimize import linprog, minimize


def hemisphere_grid(n: int) -> np.ndarray:
    """n spiral points on the upper unit hemisphere."""
    i = np.arange(n) + 0.5
    z = 1 - i / n
    r = np.sqrt(1 - z * z)
    phi = math.pi * (3 - math.sqrt(5)) * np.arange(n)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def extreme_points(points: np.ndarray) -> list[int]:
    """Indices of points that are not convex combinations of the others (one LP each)."""
    P = np.asarray(points, float)
    out = []
    for i in range(len(P)):
        others = np.delete(P, i, axis=0)
        A_eq = np.vstack([others.T, np.ones(len(others))])
        b_eq = np.append(P[i], 1.0)
        res = linprog(np.zeros(len(others)), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
        if res.status != 0:
            out.append(i)
    return out


def supporting_triangles(points: np.ndarray, tol: float = 1e-9) -> list[tuple[int, int, int]]:
    """Triples spanning a plane with every point on one side (facets when in general position)."""
    P = np.asarray(points, float)
    found = []
    for i, j, k in itertools.combinations(range(len(P)), 3):
        n = np.cross(P[j] - P[i], P[k] - P[i])
        if np.linalg.norm(n) < 1e-12:
            continue
        s = (P - P[i]) @ n
        if (s <= tol).all() or (s >= -tol).all():
            found.append((i, j, k))
    return found


def pair_extent(points: np.ndarray, u) -> float:
    """Extent along u as the largest projected vertex difference over all pairs."""
    P = np.asarray(points, float)
    d = (P[:, None, :] - P[None, :, :]) @ np.asarray(u, float)
    return float(d.max())


def _sph(q) -> np.ndarray:
    return np.array([math.sin(q[0]) * math.cos(q[1]), math.sin(q[0]) * math.sin(q[1]), math.cos(q[0])])


def dense_width(points: np.ndarray, n: int = 10**6, chunk: int = 50_000, refine: int = 8) -> float:
    """Minimal width by brute force over n hemisphere directions, then polished locally."""
    P = np.asarray(points, float)
    dirs = hemisphere_grid(n)
    w = np.concatenate(
        [np.ptp(dirs[s : s + chunk] @ P.T, axis=1) for s in range(0, n, chunk)]
    )
    best = float(w.min())
    for i in np.argsort(w)[:refine]:
        v = dirs[i]
        q0 = [math.acos(min(1.0, v[2])), math.atan2(v[1], v[0])]
        res = minimize(lambda q: float(np.ptp(P @ _sph(q))), q0, method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
        best = min(best, float(res.fun))
    return best


def _angles(m: int, period: float = math.pi) -> np.ndarray:
    return np.arange(m) * period / m


def polygon_width_grid(points2: np.ndarray, m: int = 3600) -> float:
    t = _angles(m)
    proj = np.asarray(points2, float) @ np.stack([np.cos(t), np.sin(t)])
    return float((proj.max(axis=0) - proj.min(axis=0)).min())


def rect_slack_grid(points2: np.ndarray, a: float, b: float, m: int = 3600) -> float:
    """min over m turns of max(width - a, height - b)."""
    t = _angles(m)
    c, s = np.cos(t), np.sin(t)
    P = np.asarray(points2, float)
    x = P[:, :1] * c - P[:, 1:] * s
    y = P[:, :1] * s + P[:, 1:] * c
    slack = np.maximum(np.ptp(x, axis=0) - a, np.ptp(y, axis=0) - b)
    return float(slack.min())


def xslab_grid(points2: np.ndarray, m: int = 36000) -> float:
    """Shortest horizontal intercept of a slab containing the points, over m slab angles."""
    t = (np.arange(m) + 0.5) * math.pi / m
    n = np.stack([-np.sin(t), np.cos(t)])
    proj = np.asarray(points2, float) @ n
    return float(((proj.max(axis=0) - proj.min(axis=0)) / np.sin(t)).min())


def _view_slack(P: np.ndarray, polar: float, azim: float, turn: float, a: float, b: float) -> float:
    v = np.array([math.sin(polar) * math.cos(azim), math.sin(polar) * math.sin(azim), math.cos(polar)])
    helper = np.eye(3)[int(np.argmin(np.abs(v)))]
    e1 = np.cross(v, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(v, e1)
    x = math.cos(turn) * e1 + math.sin(turn) * e2
    y = -math.sin(turn) * e1 + math.cos(turn) * e2
    return max(float(np.ptp(P @ x)) - a, float(np.ptp(P @ y)) - b)


def view_grid_slack(
    points: np.ndarray, a: float, b: float, n_dirs: int = 10_000, n_angles: int = 720, refine: int = 6
) -> float:
    """Least slack max(W - a, H - b) of a shadow over a grid of views, polished locally.

    A view is a slide direction v and a turn of the shadow inside the window
    plane; the body slides through a x b exactly when some view has slack <= 0.
    """
    P = np.asarray(points, float)
    dirs = hemisphere_grid(n_dirs)
    helper = np.where(np.abs(dirs[:, :1]) < 0.9, [[1.0, 0, 0]], [[0, 1.0, 0]])
    e1 = np.cross(dirs, helper)
    e1 /= np.linalg.norm(e1, axis=1, keepdims=True)
    e2 = np.cross(dirs, e1)
    t = _angles(n_angles)
    c, s = np.cos(t), np.sin(t)
    p1, p2 = P @ e1.T, P @ e2.T  # (n, dirs)
    best = np.empty((n_dirs, n_angles))
    for k in range(0, n_dirs, 500):
        q1, q2 = p1[:, k : k + 500, None], p2[:, k : k + 500, None]
        x = q1 * c + q2 * s
        y = -q1 * s + q2 * c
        best[k : k + 500] = np.maximum(np.ptp(x, axis=0) - a, np.ptp(y, axis=0) - b)
    flat = np.argsort(best, axis=None)[:refine]
    result = float(best.min())
    for f in flat:
        i, j = np.unravel_index(f, best.shape)
        v = dirs[i]
        polar, azim = math.acos(min(1.0, v[2])), math.atan2(v[1], v[0])
        # same turn convention as the grid: x = cos t e1 + sin t e2 with e1 from the helper
        h = np.eye(3)[int(np.argmin(np.abs(v)))]
        g1 = np.cross(v, h)
        g1 /= np.linalg.norm(g1)
        g2 = np.cross(v, g1)
        xg = c[j] * e1[i] + s[j] * e2[i]
        turn = math.atan2(xg @ g2, xg @ g1)
        res = minimize(
            lambda q: _view_slack(P, q[0], q[1], q[2], a, b),
            [polar, azim, turn],
            method="Nelder-Mead",
            options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 4000},
        )
        result = min(result, float(res.fun))
    return result


def closest_point_match(got: np.ndarray, want: np.ndarray) -> float:
    """Largest distance from a wanted point to its nearest computed point, and back."""
    d = np.linalg.norm(got[:, None, :] - want[None, :, :], axis=2)
    return float(max(d.min(axis=0).max(), d.min(axis=1).max()))


def widest_shadow_grid(points: np.ndarray, n_dirs: int = 4000, n_angles: int = 720) -> float:
    """Largest shadow width over a direction grid; each width itself from an angle grid."""
    P = np.asarray(points, float)
    best = 0.0
    for v in hemisphere_grid(n_dirs):
        h = np.eye(3)[int(np.argmin(np.abs(v)))]
        e1 = np.cross(v, h)
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(v, e1)
        best = max(best, polygon_width_grid(np.stack([P @ e1, P @ e2], axis=1), n_angles))
    return best


def disc_diameter(points2: np.ndarray) -> float:
    """Smallest enclosing disc diameter by minimising the farthest distance (convex)."""
    P = np.asarray(points2, float)
    res = minimize(
        lambda c: float(np.max(np.hypot(P[:, 0] - c[0], P[:, 1] - c[1]))),
        P.mean(axis=0),
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-13, "maxiter": 4000},
    )
    return 2 * float(res.fun)


def _shadow_disc(P: np.ndarray, v: np.ndarray) -> float:
    h = np.eye(3)[int(np.argmin(np.abs(v)))]
    e1 = np.cross(v, h)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(v, e1)
    return disc_diameter(np.stack([P @ e1, P @ e2], axis=1))


def thinnest_cylinder(points: np.ndarray, n_dirs: int = 600, refine: int = 4) -> float:
    """Thinnest enclosing cylinder: direction grid, then local polish of the best few."""
    P = np.asarray(points, float)
    dirs = hemisphere_grid(n_dirs)
    vals = np.array([_shadow_disc(P, v) for v in dirs])
    best = float(vals.min())
    for i in np.argsort(vals)[:refine]:
        v = dirs[i]
        q0 = [math.acos(min(1.0, v[2])), math.atan2(v[1], v[0])]
        res = minimize(lambda q: _shadow_disc(P, _sph(q)), q0, method="Nelder-Mead",
                       options={"xatol": 1e-9, "fatol": 1e-11, "maxiter": 800})
        best = min(best, float(res.fun))
    return best
