"""Circular windows and the regular tetrahedron.

A plane through vertex B meeting AC at U and AD at V (|AU| = x, |AV| = y)
cuts the triangle BUV; a second plane through C, parallel to it, cuts CST
with parameters z = (x - y)/x and w = (x - y)/(x (1 - y)). The thresholds are
the smallest disc diameters that admit these sections.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateTriangle, PreconditionViolated
from .kernel import (
    Polytope,
    RigidPlacement,
    axis_angle_matrix,
    cross_section_z0,
    enclosing_disc,
    project_shadow,
    rotation_taking,
    unit,
)
from .motion.path import MotionPath, RotateStage, TranslateStage
from .sampling import fibonacci_sphere, refine_direction
from .shapes import REGULAR_TETRAHEDRON_VERTICES, regular_tetrahedron
from .tolerances import EPS_GEOM, OPT_TOL

GRID_STEP = 1e-3


@dataclass(frozen=True)
class CrossParams:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.y <= 1.0 and 0.0 <= self.x <= 1.0):
            raise ValueError("x and y must lie in [0, 1]")

    @property
    def z(self) -> float:
        return (self.x - self.y) / self.x if self.x > self.y else 0.0

    @property
    def w(self) -> float:
        return (self.x - self.y) / (self.x * (1 - self.y)) if self.x > self.y else 0.0


def _face_sides_sq(p, q):
    """Squared sides of the triangle cut from a unit equilateral corner at distances p, q."""
    return 1 - p + p * p, 1 - q + q * q, p * p - p * q + q * q


def cross_triangle_lengths(p: CrossParams):
    """Squared side lengths of BUV and of CST."""
    return _face_sides_sq(p.x, p.y), _face_sides_sq(p.z, p.w)


def _diameter_sq(s1, s2, s3):
    """Vectorised squared diameter of the smallest disc around a triangle."""
    s1, s2, s3 = np.broadcast_arrays(*(np.asarray(s, dtype=float) for s in (s1, s2, s3)))
    longest = np.maximum(np.maximum(s1, s2), s3)
    rest = s1 + s2 + s3 - longest
    den = 2 * (s1 * s2 + s1 * s3 + s2 * s3) - s1 * s1 - s2 * s2 - s3 * s3
    with np.errstate(divide="ignore", invalid="ignore"):
        acute = 4 * s1 * s2 * s3 / den
    return np.where(longest >= rest, longest, acute)


def tri_enclosing_diameter(sides_sq, tol: float = EPS_GEOM) -> float:
    """Diameter of the smallest disc enclosing a triangle given squared sides."""
    s = sorted(float(v) for v in sides_sq)
    if min(s) < 0:
        raise DegenerateTriangle("negative squared side")
    a, b, c = (math.sqrt(v) for v in s)
    if a + b < c - tol:
        raise DegenerateTriangle("triangle inequality violated")
    return float(math.sqrt(_diameter_sq(*s)))


def _buv(x, y):
    return np.sqrt(_diameter_sq(*_face_sides_sq(x, y)))


def _delta1_objective(x, y):
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    d = x - y
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(d > 0, d / x, 0.0)
        w = np.where(d > 0, d / (x * (1 - y)), 0.0)
    return np.maximum(_buv(x, y), _buv(z, w))


@dataclass(frozen=True)
class ThresholdResult:
    value: float
    argmin: tuple[float, float]
    mode: str
    grid_value: float


_PATTERN = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)]


def _pattern_search(f, x0, y0, h, inside, tol=OPT_TOL):
    """Compass search on the axes and diagonals, halving the step on failure."""
    best = float(f(x0, y0))
    x, y = x0, y0
    while h > tol * 1e-3:
        moved = False
        for dx, dy in _PATTERN:
            cx, cy = x + h * dx, y + h * dy
            if not inside(cx, cy):
                continue
            v = float(f(cx, cy))
            if v < best - 1e-16:
                best, x, y, moved = v, cx, cy, True
                break
        if not moved:
            h *= 0.5
    return best, x, y


def _grid_argmin(vals: np.ndarray, xs: np.ndarray, ys: np.ndarray):
    # argmin returns the first minimum in (x, y) lexicographic order
    i = int(np.nanargmin(vals))
    ix, iy = np.unravel_index(i, vals.shape)
    return float(vals[ix, iy]), float(xs[ix]), float(ys[iy])


@lru_cache(maxsize=None)
def find_delta2(step: float = GRID_STEP) -> ThresholdResult:
    """Smallest enclosing-disc diameter of the section BUV over the closed square."""
    g = np.linspace(0.0, 1.0, int(round(1 / step)) + 1)
    vals = _buv(g[:, None], g[None, :])
    gv, x, y = _grid_argmin(vals, g, g)
    best, x, y = _pattern_search(_buv, x, y, step, lambda a, b: 0 <= a <= 1 and 0 <= b <= 1)
    return ThresholdResult(best, (x, y), "delta2", gv)


@lru_cache(maxsize=None)
def find_delta1(step: float = GRID_STEP) -> ThresholdResult:
    """Smallest diameter admitting both sections BUV and CST, over 0 < y < x < 1."""
    g = np.linspace(0.0, 1.0, int(round(1 / step)) + 1)[1:-1]
    X, Y = g[:, None], g[None, :]
    with np.errstate(invalid="ignore"):
        vals = np.where(Y < X, _delta1_objective(X, Y), np.nan)
    gv, x, y = _grid_argmin(vals, g, g)
    best, x, y = _pattern_search(_delta1_objective, x, y, step, lambda a, b: 0 < b < a < 1)
    return ThresholdResult(best, (x, y), "delta1", gv)


def vertex_cross_min() -> float:
    """Least disc diameter of any plane section through a vertex of the tetrahedron."""
    return find_delta2().value


def _section_diameters(apex, lone, p, q, x, y):
    """Disc diameters of the triangles (apex, lone + x(p - lone), lone + y(q - lone)) in 3D."""
    U = lone + x[..., None] * (p - lone)
    V = lone + y[..., None] * (q - lone)
    s1 = ((U - apex) ** 2).sum(-1)
    s2 = ((V - apex) ** 2).sum(-1)
    s3 = ((U - V) ** 2).sum(-1)
    return np.sqrt(_diameter_sq(s1, s2, s3))


@dataclass(frozen=True)
class VertexCertificate:
    """Per-vertex least section diameter; all above d means no passage for d."""

    d: float
    diameters: tuple[float, ...]

    @property
    def impossible(self) -> bool:
        return all(v > self.d for v in self.diameters)


def vertex_certificate(d: float, step: float = 2e-3) -> VertexCertificate:
    """Compute, from 3D coordinates, the least section diameter through each vertex.

    A plane through a vertex that splits the other three meets the opposite
    face along a segment with ends on the two edges at a 'lone' vertex; every
    choice of lone vertex is scanned.
    """
    V = REGULAR_TETRAHEDRON_VERTICES
    g = np.linspace(0.0, 1.0, int(round(1 / step)) + 1)
    X, Y = np.meshgrid(g, g, indexing="ij")
    out = []
    for i in range(4):
        best = math.inf
        others = [j for j in range(4) if j != i]
        for lone in others:
            p, q = [V[j] for j in others if j != lone]

            def f(x, y, i=i, lone=lone, p=p, q=q):
                return float(_section_diameters(V[i], V[lone], p, q, np.array(x), np.array(y)))

            vals = _section_diameters(V[i], V[lone], p, q, X, Y)
            _, x0, y0 = _grid_argmin(vals, g, g)
            val, _, _ = _pattern_search(f, x0, y0, step, lambda a, b: 0 <= a <= 1 and 0 <= b <= 1)
            best = min(best, val)
        out.append(best)
    return VertexCertificate(d, tuple(out))


@dataclass(frozen=True)
class CylinderResult:
    value: float
    axis: np.ndarray
    grid_min: float
    samples: int


def shadow_disc_diameter(K: Polytope, v) -> float:
    return enclosing_disc(project_shadow(K, v)).diameter


def min_cylinder_diameter(K: Polytope, resolution: int = 10_000, refine: int = 8) -> CylinderResult:
    """Thinnest circular cylinder containing K: grid over axes plus local refinement."""
    if resolution < 10_000:
        raise ValueError("resolution must be >= 10000")
    dirs = fibonacci_sphere(resolution, hemisphere=True)
    vals = np.array([shadow_disc_diameter(K, v) for v in dirs])
    order = np.argsort(vals, kind="stable")[:refine]
    step = 2.0 / math.sqrt(resolution)
    best_v, best = dirs[order[0]], float(vals[order[0]])
    for i in order:
        v, f = refine_direction(lambda u: shadow_disc_diameter(K, u), dirs[i], step)
        if f < best:
            best_v, best = v, f
    return CylinderResult(best, best_v, float(vals.min()), resolution)


# --- the five-step motion ----------------------------------------------------


def _frame(normal) -> np.ndarray:
    """Rotation whose third column is ``normal``."""
    return rotation_taking([0.0, 0.0, 1.0], normal)


def _k_stage_translate(g0: RigidPlacement, g1: RigidPlacement) -> TranslateStage:
    return TranslateStage.between(g0.inverse(), g1.inverse())


def _k_stage_rotate(point, direction, angle0, angle1, base: RigidPlacement) -> RotateStage:
    """K-motion for the window motion s -> Rot_L(angle(s)) ∘ base."""
    inv = base.inverse()
    return RotateStage(inv.apply(point), base.rotation.T @ unit(direction), -angle0, -angle1, inv)


@dataclass(frozen=True)
class FiveStepPlan:
    d: float
    x: float
    path: MotionPath
    rectangle: np.ndarray
    rectangle_diagonal: float
    stage_names: tuple[str, ...]


def _section_polygon(K: Polytope, p: RigidPlacement) -> np.ndarray:
    return cross_section_z0(K, p).vertices


def five_step_plan(d: float, tol: float = EPS_GEOM) -> FiveStepPlan:
    """Passage of the unit regular tetrahedron through a disc of diameter d.

    Built as a motion of the window over the fixed tetrahedron and inverted
    stage by stage. The second half is the first half mapped by the half-turn
    swapping A<->C and B<->D, run backwards.
    """
    delta2 = find_delta2()
    if d < delta2.value - tol:
        raise PreconditionViolated(f"d = {d} is below the vertex threshold {delta2.value:.9g}")
    K = regular_tetrahedron()
    A, B, C, D = REGULAR_TETRAHEDRON_VERTICES
    x = delta2.argmin[0]
    U, V = A + x * (C - A), A + x * (D - A)

    # centre of the smallest disc around BUV, lifted back into space
    e1, e2 = _plane_axes(B, U, V)
    frame = np.stack([e1, e2], axis=1)
    disc = enclosing_disc((np.stack([B, U, V]) - B) @ frame)
    O = B + frame @ np.asarray(disc.center)
    n = unit(np.cross(U - B, V - B))
    if (A - B) @ n > 0:
        n = -n
    clearance = 0.01
    Rg = _frame(n)
    g_entry = RigidPlacement(Rg, A - clearance * n)
    g_a = RigidPlacement(Rg, A)
    g_o = RigidPlacement(Rg, O)

    # turn about UV until the window plane is parallel to AB and CD
    axis = unit(V - U)
    m = unit(np.cross(B - A, D - C))
    phi = _signed_angle(n, m, axis)
    options = [phi, phi - math.copysign(math.pi, phi)]

    def same_side(ang: float) -> bool:
        nm = axis_angle_matrix(axis, 0.5 * ang) @ n
        return ((A - U) @ nm) * ((B - U) @ nm) > 0

    Phi = next(ang for ang in options if same_side(ang))
    g_rect = RigidPlacement.about_axis(U, axis, Phi).compose(g_o)

    # half-turn symmetry A<->C, B<->D and the matching flip of the window
    s_axis = unit(0.5 * (B + D) - 0.5 * (A + C))
    sigma = RigidPlacement(axis_angle_matrix(s_axis, math.pi), np.zeros(3))
    rho = RigidPlacement(g_rect.rotation.T @ sigma.rotation @ g_rect.rotation, np.zeros(3))

    def mirror(g: RigidPlacement) -> RigidPlacement:
        return sigma.compose(g).compose(rho)

    stages = [
        _k_stage_translate(g_entry, g_a),
        _k_stage_translate(g_a, g_o),
        _k_stage_rotate(U, axis, 0.0, Phi, g_o),
        _k_stage_translate(g_rect, mirror(g_rect)),
        _k_stage_rotate(sigma.apply(U), sigma.rotation @ axis, Phi, 0.0, mirror(g_o)),
        _k_stage_translate(mirror(g_o), mirror(g_a)),
        _k_stage_translate(mirror(g_a), mirror(g_entry)),
    ]
    path = MotionPath(tuple(stages))
    rect = _section_polygon(K, g_rect.inverse())
    diag = float(max(np.linalg.norm(p - q) for p in rect for q in rect))
    names = ("entry", "slide", "rotate", "slide", "rotate", "slide", "exit")
    return FiveStepPlan(d, x, path, rect, diag, names)


def five_step_motion(d: float) -> MotionPath:
    return five_step_plan(d).path


def _plane_axes(p, q, r):
    e1 = unit(q - p)
    n = unit(np.cross(q - p, r - p))
    return e1, np.cross(n, e1)


def _signed_angle(u, v, axis) -> float:
    """Angle of the rotation about ``axis`` taking u to v (both orthogonal to axis)."""
    return math.atan2(float(np.cross(u, v) @ axis), float(u @ v))
