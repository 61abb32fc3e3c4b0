"""Sliding a polytope through a rectangular window.

A slide exists iff there are orthogonal unit vectors x, y (the window axes in
the image plane) with |<x, e>| <= a and |<y, e>| <= b for every segment e
joining two vertices. The admissible sets of x and of y are spherical regions
cut out by these linear constraints; a good pair, if one exists, can be found
with one of its members at a region vertex or at a north-closest arc point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.optimize import minimize
from scipy.spatial.transform import Rotation

from .errors import InvalidWitness
from .kernel import (
    Polytope,
    RigidPlacement,
    contract,
    extent,
    rotation_taking,
    shadow_cover,
    unit,
)
from .kernel.cover import CoverPlacement
from .tolerances import EPS_GEOM

# fixed generic north pole (seeded pseudo-random unit vector)
_NORTH_SEED = 20240531


def generic_north(seed: int = _NORTH_SEED) -> np.ndarray:
    return unit(np.random.default_rng(seed).normal(size=3))


def _canonical_sign(u: np.ndarray) -> np.ndarray:
    """Flip rows so the first clearly nonzero coordinate is positive."""
    u = np.atleast_2d(u)
    idx = np.argmax(np.abs(u) > 1e-12, axis=1)
    s = np.sign(u[np.arange(len(u)), idx])
    s[s == 0] = 1.0
    return u * s[:, None]


def _orthonormal_basis(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unit vectors p, q spanning the great circle orthogonal to each row of x."""
    x = np.atleast_2d(x)
    helper = np.eye(3)[np.argmin(np.abs(x), axis=1)]
    p = np.cross(x, helper)
    p /= np.linalg.norm(p, axis=1, keepdims=True)
    q = np.cross(x, p)
    return p, q


@dataclass(frozen=True, eq=False)
class SphericalRegion:
    """{u in S^2 : |<u, normals[k]>| <= bounds[k] + slack[k] for all k}.

    Each unsigned constraint stands for the antipodal pair of halfspace
    constraints <u, +e> <= c and <u, -e> <= c, so the region is centrally
    symmetric. ``vertex_points`` are pairwise circle intersections inside the
    region, ``top_points`` the north-closest point of each boundary circle
    inside the region.
    """

    normals: np.ndarray
    bounds: np.ndarray
    slack: np.ndarray
    north: np.ndarray
    vertex_points: np.ndarray
    top_points: np.ndarray
    circle_pairs: np.ndarray = field(repr=False)

    @property
    def full_sphere(self) -> bool:
        return len(self.normals) == 0

    @property
    def empty(self) -> bool:
        return not self.full_sphere and len(self.vertex_points) == 0 and len(self.top_points) == 0

    @property
    def constraints(self) -> list[tuple[np.ndarray, float]]:
        """Signed halfspace constraints (e, c) meaning <u, e> <= c."""
        out = []
        for n, c in zip(self.normals, self.bounds):
            out += [(n, float(c)), (-n, float(c))]
        return out

    def violation(self, u) -> np.ndarray:
        """Largest constraint excess for each row of u (<= 0 means inside)."""
        u = np.atleast_2d(np.asarray(u, dtype=float))
        if self.full_sphere:
            return np.full(len(u), -np.inf)
        excess = np.abs(u @ self.normals.T) - self.bounds - self.slack
        return excess.max(axis=1)

    def contains(self, u) -> np.ndarray | bool:
        u = np.asarray(u, dtype=float)
        inside = self.violation(u) <= 0
        return bool(inside[0]) if u.ndim == 1 else inside

    @cached_property
    def candidates(self) -> np.ndarray:
        """S ∪ T modulo the antipodal map, sorted lexicographically."""
        pts = np.concatenate([self.vertex_points, self.top_points]).reshape(-1, 3)
        if len(pts) == 0:
            return pts
        pts = _canonical_sign(pts)
        pts = np.unique(np.round(pts, 12), axis=0)
        return pts / np.linalg.norm(pts, axis=1, keepdims=True)

    @cached_property
    def arcs(self) -> list[tuple[int, int, float, float]]:
        """Boundary arcs as (constraint index, sign, start angle, end angle).

        A circle <u, s*e_k> = c_k is parameterised as
        c*n + r*(cos(t) p + sin(t) q) with (p, q) from ``circle_frame``.
        """
        out = []
        n_pts = len(self.vertex_points)
        for k in range(len(self.normals)):
            for sgn in (1, -1):
                cid = 2 * k + (0 if sgn == 1 else 1)
                n, c = sgn * self.normals[k], float(self.bounds[k])
                r = math.sqrt(max(0.0, 1 - c * c))
                if r < 1e-9:
                    continue
                p, q = self.circle_frame(k, sgn)
                on = [i for i in range(n_pts) if cid in self.circle_pairs[i]]
                angles = sorted(
                    {
                        round(math.atan2(self.vertex_points[i] @ q, self.vertex_points[i] @ p) % (2 * math.pi), 12)
                        for i in on
                    }
                )

                def point(t: float) -> np.ndarray:
                    return c * n + r * (math.cos(t) * p + math.sin(t) * q)

                if not angles:
                    if self.contains(point(0.0)):
                        out.append((k, sgn, 0.0, 2 * math.pi))
                    continue
                for t0, t1 in zip(angles, angles[1:] + [angles[0] + 2 * math.pi]):
                    if self.contains(point(0.5 * (t0 + t1))):
                        out.append((k, sgn, t0, t1))
        return out

    def circle_frame(self, k: int, sign: int) -> tuple[np.ndarray, np.ndarray]:
        p, q = _orthonormal_basis(sign * self.normals[k])
        return p[0], q[0]


def _segment_constraints(K: Polytope, bound: float, tol: float):
    v = K.vertices
    i, j = np.triu_indices(len(v), k=1)
    e = v[j] - v[i]
    length = np.linalg.norm(e, axis=1)
    keep = length > 0
    e, length = e[keep], length[keep]
    c = bound / length
    # segments shorter than the bound never bind; equal ones touch at a point
    active = c <= 1 + tol / length
    e, length, c = e[active], length[active], np.minimum(c[active], 1.0)
    n = _canonical_sign(e / length[:, None]) if len(e) else e.reshape(0, 3)
    # parallel segments: only the longest (smallest c) matters
    order = np.lexsort((c, *np.round(n, 12).T[::-1]))
    n, c, length = n[order], c[order], length[order]
    uniq = np.ones(len(n), dtype=bool)
    if len(n) > 1:
        uniq[1:] = np.abs(np.diff(n, axis=0)).max(axis=1) > 1e-12
    return n[uniq], c[uniq], tol / length[uniq]


def _circle_intersections(n: np.ndarray, c: np.ndarray):
    """Pairwise intersections of circles {<u, n_i> = c_i} on the unit sphere."""
    m = len(n)
    i, j = np.triu_indices(m, k=1)
    n1, n2, c1, c2 = n[i], n[j], c[i], c[j]
    g = np.einsum("ij,ij->i", n1, n2)
    ok = np.abs(g) < 1 - 1e-12
    i, j, n1, n2, c1, c2, g = i[ok], j[ok], n1[ok], n2[ok], c1[ok], c2[ok], g[ok]
    det = 1 - g * g
    al = (c1 - g * c2) / det
    be = (c2 - g * c1) / det
    u0 = al[:, None] * n1 + be[:, None] * n2
    rem = 1 - np.einsum("ij,ij->i", u0, u0)
    ok = rem > -1e-10
    i, j, u0, rem, n1, n2 = i[ok], j[ok], u0[ok], rem[ok], n1[ok], n2[ok]
    cr = np.cross(n1, n2)
    gam = np.sqrt(np.maximum(rem, 0.0)) / np.linalg.norm(cr, axis=1)
    pts = np.concatenate([u0 + gam[:, None] * cr, u0 - gam[:, None] * cr])
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    pairs = np.concatenate([np.stack([i, j], 1), np.stack([i, j], 1)])
    return pts, pairs


def admissible_region(
    K: Polytope, bound: float, north=None, tol: float = EPS_GEOM
) -> SphericalRegion:
    """Directions u whose extent of K is at most ``bound``."""
    if not bound > 0:
        raise ValueError("bound must be > 0")
    north = generic_north() if north is None else unit(north)
    normals, bounds, slack = _segment_constraints(K, bound, tol)
    empty3 = np.empty((0, 3))
    if len(normals) == 0:
        return SphericalRegion(normals, bounds, slack, north, empty3, empty3, np.empty((0, 2), int))
    # signed circles: index 2k is +e_k, 2k+1 is -e_k
    sn = np.empty((2 * len(normals), 3))
    sn[0::2], sn[1::2] = normals, -normals
    sc = np.repeat(bounds, 2)

    region = SphericalRegion(normals, bounds, slack, north, empty3, empty3, np.empty((0, 2), int))
    pts, pairs = _circle_intersections(sn, sc)
    inside = region.violation(pts) <= 0 if len(pts) else np.zeros(0, bool)
    verts, vpairs = pts[inside], pairs[inside]

    # north-closest point of every circle
    radial = north - (sn @ north)[:, None] * sn
    rn = np.linalg.norm(radial, axis=1)
    r = np.sqrt(np.maximum(0.0, 1 - sc * sc))
    safe = rn > 1e-12
    tops = sc[:, None] * sn
    tops[safe] += r[safe, None] * radial[safe] / rn[safe, None]
    tops /= np.linalg.norm(tops, axis=1, keepdims=True)
    tops = tops[region.violation(tops) <= 0]
    return SphericalRegion(normals, bounds, slack, north, verts, tops, vpairs)


def _search_on_great_circles(xs: np.ndarray, region: SphericalRegion, chunk: int = 128):
    """First x in ``xs`` whose orthogonal great circle meets ``region``; returns (x, y)."""
    if region.full_sphere:
        p, _ = _orthonormal_basis(xs[:1])
        return xs[0], p[0]
    E, c, sl = region.normals, region.bounds, region.slack
    for start in range(0, len(xs), chunk):
        X = xs[start : start + chunk]
        P, Q = _orthonormal_basis(X)
        Pk, Qk = P @ E.T, Q @ E.T  # (M, m)
        R = np.hypot(Pk, Qk)
        phi = np.arctan2(Qk, Pk)
        lim = c + sl
        restricted = R > lim
        beta = np.arccos(np.clip(lim / np.where(R > 0, R, 1.0), -1.0, 1.0))
        # allowed set of t (mod pi): [phi + beta, phi + pi - beta]
        s = np.where(restricted, (phi + beta) % math.pi, 0.0)
        L = np.where(restricted, math.pi - 2 * beta, math.pi)
        # candidate t: every interval start; feasible if inside all intervals
        d = (s[:, :, None] - s[:, None, :]) % math.pi  # (M, cand, constraint)
        d = np.where(d >= math.pi - 1e-12, 0.0, d)
        room = L[:, None, :] - d
        ok = room >= -1e-12
        ok &= restricted[:, :, None] | ~restricted.any(axis=1)[:, None, None]
        good = ok.all(axis=2)
        width = np.where(good, room.min(axis=2), -np.inf)
        for row in range(len(X)):
            if not good[row].any():
                continue
            # centre of the widest feasible arc starting at a candidate
            i = int(np.argmax(width[row]))
            t = s[row, i] + 0.5 * max(width[row, i], 0.0)
            y = math.cos(t) * P[row] + math.sin(t) * Q[row]
            if region.contains(y):
                return X[row], y
    return None


def good_pair_search(A: SphericalRegion, B: SphericalRegion):
    """Orthogonal x in A, y in B, or None when no such pair exists."""
    if A.empty or B.empty:
        return None
    if A.full_sphere and B.full_sphere:
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    if A.full_sphere:
        y, x = _search_on_great_circles(B.candidates[:1], A)
        return x, y
    if B.full_sphere:
        return _search_on_great_circles(A.candidates[:1], B)
    hit = _search_on_great_circles(A.candidates, B)
    if hit is not None:
        return hit
    hit = _search_on_great_circles(B.candidates, A)
    if hit is not None:
        y, x = hit
        return x, y
    return None


@dataclass(frozen=True)
class SlidingWitness:
    """Window axes x, y in the body frame; the body slides along v = x × y."""

    x_axis: np.ndarray
    y_axis: np.ndarray

    def __post_init__(self) -> None:
        x, y = unit(self.x_axis), unit(self.y_axis)
        if abs(float(x @ y)) > 1e-10:
            raise InvalidWitness("witness axes are not orthogonal")
        object.__setattr__(self, "x_axis", x)
        object.__setattr__(self, "y_axis", y)

    @property
    def v(self) -> np.ndarray:
        return np.cross(self.x_axis, self.y_axis)

    def frame(self) -> np.ndarray:
        """Rotation whose rows are (x, y, v): body frame -> window frame."""
        return np.stack([self.x_axis, self.y_axis, self.v])

    def rotated(self, R) -> SlidingWitness:
        R = np.asarray(R, dtype=float)
        return SlidingWitness(R @ self.x_axis, R @ self.y_axis)


@dataclass(frozen=True)
class SlideResult:
    feasible: bool
    witness: SlidingWitness | None = None
    margin: float = -math.inf
    grazing: bool = False
    extent_x: float = math.nan
    extent_y: float = math.nan


def witness_margin(K: Polytope, w: SlidingWitness, a: float, b: float) -> float:
    lo, hi = extent(K, w.x_axis)
    ex = hi - lo
    lo, hi = extent(K, w.y_axis)
    ey = hi - lo
    return min(a - ex, b - ey)


def verify_witness(K: Polytope, w: SlidingWitness, a: float, b: float, tol: float = EPS_GEOM) -> bool:
    """Independent check of orthogonality and both extent conditions."""
    return abs(float(w.x_axis @ w.y_axis)) <= 1e-10 and witness_margin(K, w, a, b) >= -tol


def _polish(K: Polytope, w: SlidingWitness, a: float, b: float) -> SlidingWitness:
    """Rotate the witness frame locally to maximise the worst-side clearance."""
    F = w.frame()

    def loss(rv):
        G = Rotation.from_rotvec(rv).as_matrix() @ F
        px, py = K.vertices @ G[0], K.vertices @ G[1]
        return -min(a - np.ptp(px), b - np.ptp(py))

    best = loss(np.zeros(3))
    res = minimize(
        loss,
        np.zeros(3),
        method="Nelder-Mead",
        options={"initial_simplex": np.vstack([np.zeros(3), 0.05 * np.eye(3)]), "xatol": 1e-9, "fatol": 1e-12},
    )
    if res.fun < best:
        G = Rotation.from_rotvec(res.x).as_matrix() @ F
        return SlidingWitness(G[0], G[1])
    return w


def slide_feasible(
    K: Polytope, a: float, b: float, tol: float = EPS_GEOM, polish: bool = True
) -> SlideResult:
    """Decide whether K can slide through the a x b rectangle; return a witness."""
    if not (a > 0 and b > 0):
        raise ValueError("a and b must be > 0")
    A = admissible_region(K, a, tol=tol)
    B = admissible_region(K, b, tol=tol)
    pair = good_pair_search(A, B)
    if pair is None:
        return SlideResult(False)
    x, y = pair
    y = unit(y - (y @ x) * x)
    w = SlidingWitness(x, y)
    if not verify_witness(K, w, a, b, tol):
        raise InvalidWitness("good pair failed the extent check")
    if polish:
        w = _polish(K, w, a, b)
    m = witness_margin(K, w, a, b)
    ex = float(np.ptp(K.vertices @ w.x_axis))
    ey = float(np.ptp(K.vertices @ w.y_axis))
    return SlideResult(True, w, m, m < tol, ex, ey)


def _lift(K: Polytope, p: RigidPlacement, clearance: float) -> RigidPlacement:
    z = p.apply(K.vertices)[:, 2]
    return RigidPlacement(np.eye(3), [0.0, 0.0, clearance - z.min()]).compose(p)


def default_clearance(K: Polytope) -> float:
    return 0.01 * K.diameter


def vertical_slide_witness(
    K: Polytope, w: SlidingWitness, a: float, b: float, tol: float = EPS_GEOM
) -> RigidPlacement:
    """Placement above [0,a] x [0,b] from which K slides straight down through it."""
    if not verify_witness(K, w, a, b, tol):
        raise InvalidWitness("witness violates the extent conditions")
    R = w.frame()
    pts = K.vertices @ R.T
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    # the image plane of the witness is already horizontal, so the cover step
    # is the identity and centering the bounding box suffices
    shift2 = np.array([0.5 * a, 0.5 * b]) - 0.5 * (lo[:2] + hi[:2])
    p = RigidPlacement(R, [shift2[0], shift2[1], 0.0])
    return _lift(K, p, default_clearance(K))


def _cover_3d(cover: CoverPlacement) -> RigidPlacement:
    c, s = math.cos(cover.angle), math.sin(cover.angle)
    R = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    ctr = np.array([cover.center[0], cover.center[1], 0.0])
    shift = np.array([cover.shift[0], cover.shift[1], 0.0])
    return RigidPlacement(R, ctr + shift - R @ ctr)


def verticalize(
    K: Polytope, placement: RigidPlacement, direction, a: float, b: float
) -> tuple[RigidPlacement, CoverPlacement]:
    """Turn an oblique slide through [0,a] x [0,b] into a vertical one.

    ``placement`` puts K so that translating it along ``direction`` passes
    through the window. Rotating about the hinge line (window plane ∩ image
    plane) makes the direction vertical; the window's oblique shadow is the
    contracted rectangle, which the cover placement puts back inside the
    window.
    """
    d = unit(direction)
    if d[2] > 0:
        d = -d
    E = np.array([0.5 * a, 0.5 * b, 0.0])
    hinge = np.cross([0.0, 0.0, 1.0], d)
    if np.linalg.norm(hinge) < 1e-12:
        cover = shadow_cover(a, b, 0.0, 0.0)
        return _lift(K, placement, default_clearance(K)), cover
    hinge = unit(hinge)
    alpha = math.acos(min(1.0, -d[2]))
    beta = math.atan2(hinge[1], hinge[0])
    Rq = rotation_taking(d, [0.0, 0.0, -1.0])
    Q = RigidPlacement(Rq, E - Rq @ E)
    cover = shadow_cover(a, b, alpha, beta)
    total = _cover_3d(cover).compose(Q).compose(placement)
    return _lift(K, total, default_clearance(K)), cover


__all__ = [
    "SlideResult",
    "SlidingWitness",
    "SphericalRegion",
    "admissible_region",
    "contract",
    "generic_north",
    "good_pair_search",
    "slide_feasible",
    "verify_witness",
    "vertical_slide_witness",
    "verticalize",
    "witness_margin",
]
