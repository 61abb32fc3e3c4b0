"""Convex polytopes in 3-space and the projections/sections the planners need."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from ..errors import DegenerateInput
from ..tolerances import EPS_GEOM
from .placement import RigidPlacement, unit
from .polygon import Polygon2, convex_hull_2d


@dataclass(frozen=True, eq=False)
class Polytope:
    """Convex polytope: extreme vertices, outward CCW faces and edges."""

    vertices: np.ndarray
    faces: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    @cached_property
    def face_normals(self) -> np.ndarray:
        out = []
        for f in self.faces:
            p = self.vertices[list(f)]
            # Newell's method, robust for planar polygons
            n = np.cross(p, np.roll(p, -1, axis=0)).sum(axis=0)
            out.append(n / np.linalg.norm(n))
        return np.array(out)

    @cached_property
    def diameter(self) -> float:
        d = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt((d**2).sum(-1)).max())

    def surface_area(self) -> float:
        total = 0.0
        for f in self.faces:
            p = self.vertices[list(f)]
            total += 0.5 * np.linalg.norm(np.cross(p, np.roll(p, -1, axis=0)).sum(axis=0))
        return float(total)

    def transformed(self, placement: RigidPlacement) -> Polytope:
        return Polytope(placement.apply(self.vertices), self.faces, self.edges)

    def rotated(self, rotation) -> Polytope:
        return self.transformed(RigidPlacement(rotation, np.zeros(3)))

    def translated(self, t) -> Polytope:
        return Polytope(self.vertices + np.asarray(t, dtype=float), self.faces, self.edges)


def build_polytope(points, tol: float = EPS_GEOM) -> Polytope:
    """Convex hull of at least four affinely independent points.

    Interior, face-interior and edge-interior points are discarded; coplanar
    hull triangles are merged into polygonal faces.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    if len(pts) < 4:
        raise DegenerateInput("need at least 4 points")
    scale = max(1.0, float(np.abs(pts).max()))
    centered = pts - pts.mean(axis=0)
    if np.linalg.matrix_rank(centered, tol=tol * scale * 10) < 3:
        raise DegenerateInput("points are coplanar or collinear")
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:  # pragma: no cover - rank test catches these
        raise DegenerateInput(str(exc)) from exc

    # group triangles lying on a common supporting plane
    eq = hull.equations
    groups: list[list[int]] = []
    assigned = np.full(len(eq), -1)
    for i in range(len(eq)):
        if assigned[i] >= 0:
            continue
        same = (eq[:, :3] @ eq[i, :3] > 1 - 1e-9) & (np.abs(eq[:, 3] - eq[i, 3]) <= tol * scale * 10)
        same &= assigned < 0
        idx = np.nonzero(same)[0]
        assigned[idx] = len(groups)
        groups.append(list(idx))

    face_loops: list[list[int]] = []
    for g in groups:
        normal = eq[g[0], :3]
        ids = np.unique(hull.simplices[g].ravel())
        # in-plane frame with (e1, e2, normal) right-handed so CCW means outward
        e1 = unit(np.cross(normal, np.eye(3)[int(np.argmin(np.abs(normal)))]))
        e2 = np.cross(normal, e1)
        coords = pts[ids] @ np.stack([e1, e2], axis=1)
        poly = convex_hull_2d(coords, tol=tol)
        loop = []
        for q in poly.vertices:
            k = int(np.argmin(np.abs(coords - q).sum(axis=1)))
            loop.append(int(ids[k]))
        face_loops.append(loop)

    used = sorted({i for loop in face_loops for i in loop})
    remap = {old: new for new, old in enumerate(used)}
    faces = tuple(tuple(remap[i] for i in loop) for loop in face_loops)
    edge_set = set()
    for f in faces:
        for a, b in zip(f, f[1:] + f[:1]):
            edge_set.add((min(a, b), max(a, b)))
    poly = Polytope(pts[used].copy(), faces, tuple(sorted(edge_set)))
    poly.vertices.setflags(write=False)
    return poly


def extent(K: Polytope, u) -> tuple[float, float]:
    """(min, max) of <u, v> over the vertices of K."""
    proj = K.vertices @ np.asarray(u, dtype=float)
    return float(proj.min()), float(proj.max())


def extents(K: Polytope, directions) -> np.ndarray:
    """Vectorised hi - lo over an (m, 3) array of directions."""
    proj = np.asarray(directions, dtype=float) @ K.vertices.T
    return proj.max(axis=1) - proj.min(axis=1)


def width_candidates(K: Polytope) -> np.ndarray:
    """Face normals plus normalised cross products of all edge-direction pairs."""
    v = K.vertices
    e = np.array([v[j] - v[i] for i, j in K.edges])
    e /= np.linalg.norm(e, axis=1, keepdims=True)
    iu, ju = np.triu_indices(len(e), k=1)
    c = np.cross(e[iu], e[ju])
    n = np.linalg.norm(c, axis=1)
    c = c[n > 1e-9] / n[n > 1e-9, None]
    return np.concatenate([K.face_normals, c])


def width3(K: Polytope) -> tuple[float, np.ndarray]:
    """Minimal width of K with an achieving unit direction.

    The minimum is attained either at a face normal (face/vertex antipodal pair)
    or orthogonal to two edges (edge/edge pair), so the candidate set is exact.
    """
    cand = width_candidates(K)
    w = extents(K, cand)
    i = int(np.argmin(w))
    return float(w[i]), cand[i]


def shadow_frame(v) -> tuple[np.ndarray, np.ndarray]:
    """In-plane axes (x, y) of the image plane orthogonal to ``v``.

    x is the intersection with the xz-plane, oriented with nonnegative
    x-component (or positive z when x vanishes); y completes the frame and has
    nonnegative y-component. For v parallel to the y-axis, x = (1, 0, 0).
    """
    v = unit(v)
    ex = np.cross(v, np.array([0.0, 1.0, 0.0]))
    if np.linalg.norm(ex) < 1e-12:
        ex = np.array([1.0, 0.0, 0.0])
    ex = unit(ex)
    if ex[0] < -1e-15 or (abs(ex[0]) <= 1e-15 and ex[2] < 0):
        ex = -ex
    ey = np.cross(v, ex)
    if ey[1] < -1e-15 or (abs(ey[1]) <= 1e-15 and ey[2] < 0):
        ey = -ey
    return ex, ey


def project_shadow(K: Polytope | np.ndarray, v) -> Polygon2:
    """Convex hull of the vertex projections onto the plane orthogonal to v.

    Accepts a raw (n, 3) point array too, so flat bodies can be projected.
    """
    pts = K.vertices if isinstance(K, Polytope) else np.asarray(K, dtype=float).reshape(-1, 3)
    ex, ey = shadow_frame(v)
    return convex_hull_2d(pts @ np.stack([ex, ey], axis=1))


def section_points(vertices: np.ndarray, edges, tol: float = EPS_GEOM) -> np.ndarray:
    """Points where the edges meet the plane z = 0 (vertices on it included)."""
    z = vertices[:, 2]
    pts = [vertices[np.abs(z) <= tol, :2]]
    e = np.asarray(edges, dtype=int)
    if len(e):
        za, zb = z[e[:, 0]], z[e[:, 1]]
        cross = ((za < -tol) & (zb > tol)) | ((za > tol) & (zb < -tol))
        if cross.any():
            a, b = vertices[e[cross, 0]], vertices[e[cross, 1]]
            t = (a[:, 2] / (a[:, 2] - b[:, 2]))[:, None]
            pts.append(a[:, :2] + t * (b[:, :2] - a[:, :2]))
    return np.concatenate(pts)


def cross_section_z0(
    K: Polytope, p: RigidPlacement | None = None, tol: float = EPS_GEOM
) -> Polygon2:
    """The convex polygon p(K) ∩ {z = 0}; empty, point or segment when degenerate."""
    verts = K.vertices if p is None else p.apply(K.vertices)
    return convex_hull_2d(section_points(verts, K.edges, tol), tol=tol)
