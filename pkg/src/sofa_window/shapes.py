"""Stock polytopes used throughout the demonstrations and tests."""

from __future__ import annotations

import itertools
import math

import numpy as np

from .kernel import Polytope, build_polytope

SQRT24 = math.sqrt(24.0)

# unit-edge regular tetrahedron centred at the origin
REGULAR_TETRAHEDRON_VERTICES = np.array(
    [
        [0.0, 0.0, 3.0],
        [math.sqrt(8.0), 0.0, -1.0],
        [-math.sqrt(2.0), math.sqrt(6.0), -1.0],
        [-math.sqrt(2.0), -math.sqrt(6.0), -1.0],
    ]
) / SQRT24


def regular_tetrahedron() -> Polytope:
    return build_polytope(REGULAR_TETRAHEDRON_VERTICES)


def box(dx: float = 1.0, dy: float = 1.0, dz: float = 1.0, centered: bool = False) -> Polytope:
    pts = np.array(list(itertools.product((0.0, dx), (0.0, dy), (0.0, dz))))
    if centered:
        pts -= 0.5 * np.array([dx, dy, dz])
    return build_polytope(pts)


def cube(centered: bool = False) -> Polytope:
    return box(1.0, 1.0, 1.0, centered)


def must_rotate_vertices(h: float) -> np.ndarray:
    """Vertices A, B, C, D of the tall tetrahedron that needs a twist to pass."""
    return np.array([[0.0, 0.0, 0.0], [1.0, 3.0, 0.0], [1.0, 0.0, h], [0.0, 3.0, h]])


def must_rotate_tetrahedron(h: float) -> Polytope:
    if not h > 0:
        raise ValueError("h must be > 0")
    return build_polytope(must_rotate_vertices(h))


PRESETS = {
    "cube": lambda **kw: cube(**kw),
    "regular_tetrahedron": lambda **kw: regular_tetrahedron(),
    "must_rotate_tetrahedron": lambda h=100.0, **kw: must_rotate_tetrahedron(h),
}
