"""Direction grids and local refinement on the sphere."""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize

from .tolerances import OPT_TOL

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def fibonacci_sphere(n: int, hemisphere: bool = False) -> np.ndarray:
    """n nearly uniform unit vectors; with ``hemisphere`` only z >= 0 is covered.

    Axis-type quantities (shadows, cylinders) are invariant under v -> -v, so
    the upper hemisphere suffices for them.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    i = np.arange(n) + 0.5
    z = 1 - i / n if hemisphere else 1 - 2 * i / n
    r = np.sqrt(np.maximum(0.0, 1 - z * z))
    phi = GOLDEN_ANGLE * np.arange(n)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def to_angles(v) -> tuple[float, float]:
    v = np.asarray(v, dtype=float)
    return math.acos(max(-1.0, min(1.0, v[2] / np.linalg.norm(v)))), math.atan2(v[1], v[0])


def from_angles(polar: float, azimuth: float) -> np.ndarray:
    s = math.sin(polar)
    return np.array([s * math.cos(azimuth), s * math.sin(azimuth), math.cos(polar)])


def refine_direction(f, v0, step: float, tol: float = OPT_TOL) -> tuple[np.ndarray, float]:
    """Locally minimise f over unit vectors starting from v0 (Nelder-Mead in a tangent chart)."""
    v0 = np.asarray(v0, dtype=float)
    v0 = v0 / np.linalg.norm(v0)
    helper = np.eye(3)[int(np.argmin(np.abs(v0)))]
    e1 = np.cross(v0, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(v0, e1)

    def chart(t):
        u = v0 + t[0] * e1 + t[1] * e2
        return u / np.linalg.norm(u)

    res = minimize(
        lambda t: f(chart(t)),
        np.zeros(2),
        method="Nelder-Mead",
        options={
            "initial_simplex": np.array([[0.0, 0.0], [step, 0.0], [0.0, step]]),
            "xatol": tol * 1e-2,
            "fatol": tol * 1e-3,
            "maxiter": 4000,
        },
    )
    f0 = f(v0)
    if res.fun < f0:
        return chart(res.x), float(res.fun)
    return v0, float(f0)
