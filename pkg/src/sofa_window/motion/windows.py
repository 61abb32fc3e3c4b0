"""Window shapes in the plane z = 0 and sampled free-space checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..kernel import Polygon2, Polytope, RigidPlacement, convex_hull_2d
from ..kernel.polytope import section_points
from ..tolerances import EPS_GEOM
from .path import MotionPath

# vertices must clear the window plane by this much at the path ends
END_MARGIN = 1e-6


@dataclass(frozen=True)
class Rect:
    a: float
    b: float
    kind = "rect"

    def __post_init__(self) -> None:
        if not self.a > 0:
            raise ValueError("window.a must be > 0")
        if not self.b > 0:
            raise ValueError("window.b must be > 0")

    def depth(self, pts: np.ndarray) -> float:
        x, y = pts[:, 0], pts[:, 1]
        return float(np.max(np.maximum.reduce([-x, x - self.a, -y, y - self.b, np.zeros_like(x)])))

    def outline(self) -> np.ndarray:
        return np.array([[0, 0], [self.a, 0], [self.a, self.b], [0, self.b]], dtype=float)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "a": self.a, "b": self.b}


@dataclass(frozen=True)
class Gate:
    """The slab 0 <= x <= a, unbounded in y."""

    a: float
    kind = "gate"

    def __post_init__(self) -> None:
        if not self.a > 0:
            raise ValueError("window.a must be > 0")

    def depth(self, pts: np.ndarray) -> float:
        x = pts[:, 0]
        return float(np.max(np.maximum.reduce([-x, x - self.a, np.zeros_like(x)])))

    def outline(self) -> np.ndarray:
        return np.array([[0, -1e3], [self.a, -1e3], [self.a, 1e3], [0, 1e3]], dtype=float)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "a": self.a}


@dataclass(frozen=True)
class Circle:
    d: float
    center: tuple[float, float] = (0.0, 0.0)
    kind = "circle"

    def __post_init__(self) -> None:
        if not self.d > 0:
            raise ValueError("window.d must be > 0")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    def depth(self, pts: np.ndarray) -> float:
        r = np.hypot(pts[:, 0] - self.center[0], pts[:, 1] - self.center[1])
        return float(max(0.0, (r - 0.5 * self.d).max()))

    def outline(self, n: int = 96) -> np.ndarray:
        t = np.linspace(0, 2 * math.pi, n, endpoint=False)
        return np.stack([self.center[0] + 0.5 * self.d * np.cos(t), self.center[1] + 0.5 * self.d * np.sin(t)], 1)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "d": self.d, "center": list(self.center)}


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    vertices: np.ndarray
    kind = "polygon"
    _normals: np.ndarray = field(init=False, repr=False)
    _offsets: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        v = np.array(self.vertices, dtype=float).reshape(-1, 2)
        hull = convex_hull_2d(v)
        if len(hull) < 3 or len(hull) != len(v):
            raise ValueError("window.vertices must form a convex polygon")
        if Polygon2(v).area() < 0:
            raise ValueError("window.vertices must be counter-clockwise")
        e = np.roll(v, -1, axis=0) - v
        n = np.stack([e[:, 1], -e[:, 0]], 1)
        n /= np.linalg.norm(n, axis=1, keepdims=True)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "_normals", n)
        object.__setattr__(self, "_offsets", np.einsum("ij,ij->i", n, v))

    def depth(self, pts: np.ndarray) -> float:
        out = pts @ self._normals.T - self._offsets
        return float(max(0.0, out.max()))

    def outline(self) -> np.ndarray:
        return self.vertices

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vertices": self.vertices.tolist()}


WindowSpec = Rect | Gate | Circle | ConvexPolygon


def window_from_dict(d: dict) -> WindowSpec:
    kind = d["kind"]
    if kind == "rect":
        return Rect(float(d["a"]), float(d["b"]))
    if kind == "gate":
        return Gate(float(d["a"]))
    if kind == "circle":
        return Circle(float(d["d"]), tuple(d.get("center", (0.0, 0.0))))
    if kind == "polygon":
        return ConvexPolygon(np.array(d["vertices"], dtype=float))
    raise ValueError(f"unknown window kind {kind!r}")


@dataclass(frozen=True)
class FreeVerdict:
    free: bool
    depth: float


def _section(K: Polytope, p: RigidPlacement, tol: float) -> np.ndarray:
    return section_points(p.apply(K.vertices), K.edges, tol)


def config_free(K: Polytope, p: RigidPlacement, W: WindowSpec, tol: float = EPS_GEOM) -> FreeVerdict:
    """Is the cross-section of p(K) with z = 0 inside the (closed) window?"""
    pts = _section(K, p, tol)
    if len(pts) == 0:
        return FreeVerdict(True, 0.0)
    depth = W.depth(pts)
    return FreeVerdict(depth <= tol, depth)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a sampled check; a clean report is evidence, not a proof."""

    free_at_all_samples: bool
    max_violation: float
    first_violation: tuple[int, float] | None
    start_above: bool
    end_below: bool
    samples_per_stage: int
    worst_sample: tuple[int, float] | None = None
    # the mirror flags, so that reversing a path swaps roles cleanly
    start_below: bool = False
    end_above: bool = False

    @property
    def ok(self) -> bool:
        return self.free_at_all_samples and self.start_above and self.end_below

    def to_dict(self) -> dict:
        return {
            "free_at_all_samples": self.free_at_all_samples,
            "max_violation": self.max_violation,
            "first_violation": list(self.first_violation) if self.first_violation else None,
            "start_above": self.start_above,
            "end_below": self.end_below,
            "samples_per_stage": self.samples_per_stage,
            "worst_sample": list(self.worst_sample) if self.worst_sample else None,
            "start_below": self.start_below,
            "end_above": self.end_above,
            "note": "sampled check, not a proof",
        }


def validate_path(
    K: Polytope, path: MotionPath, W: WindowSpec, n_samples: int = 1000, tol: float = EPS_GEOM
) -> ValidationReport:
    """Sample every stage uniformly and check each cross-section against W."""
    worst, worst_at, first = 0.0, None, None
    for k, s, p in path.samples(n_samples):
        v = config_free(K, p, W, tol)
        if v.depth > worst:
            worst, worst_at = v.depth, (k, s)
        if not v.free and first is None:
            first = (k, s)
    z0 = path.start().apply(K.vertices)[:, 2]
    z1 = path.end().apply(K.vertices)[:, 2]
    return ValidationReport(
        first is None,
        worst,
        first,
        bool(z0.min() > END_MARGIN),
        bool(z1.max() < -END_MARGIN),
        n_samples,
        worst_at,
        bool(z0.max() < -END_MARGIN),
        bool(z1.min() > END_MARGIN),
    )


__all__ = [
    "Circle",
    "ConvexPolygon",
    "FreeVerdict",
    "Gate",
    "Rect",
    "ValidationReport",
    "WindowSpec",
    "config_free",
    "validate_path",
    "window_from_dict",
]
