"""A tetrahedron that fits through a square only if it turns while passing."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from ..kernel import RigidPlacement
from .path import MotionPath, TranslateStage, TwistStage

MUST_ROTATE_SIDE = math.sqrt(5.0)


def must_rotate_section(c: float) -> np.ndarray:
    """Closed-form section P, Q, R, S of the tall tetrahedron at height c*h."""
    return np.array([[c, 0.0], [1.0, 3 * (1 - c)], [1 - c, 3.0], [0.0, 3 * c]])


def tan_spq(c: Fraction | int) -> Fraction:
    """tan of the angle SPQ of the section, in exact rational arithmetic."""
    c = Fraction(c)
    if not 0 < c < 1:
        raise ValueError("c must lie strictly between 0 and 1")
    P, Q, S = (c, Fraction(0)), (Fraction(1), 3 * (1 - c)), (Fraction(0), 3 * c)
    u = (Q[0] - P[0], Q[1] - P[1])
    v = (S[0] - P[0], S[1] - P[1])
    cross = u[0] * v[1] - u[1] * v[0]
    dot = u[0] * v[0] + u[1] * v[1]
    return abs(cross) / dot


def must_rotate_motion(h: float, side: float = MUST_ROTATE_SIDE, clearance: float = 0.01) -> MotionPath:
    """Raise the window along the vertical through (1/2, 3/2) while keeping its diagonal on PR.

    Expressed with the window fixed as the square [0, side]^2: K drops through
    it, turning about the vertical axis, between two plain vertical slides.
    """
    if not h > 0:
        raise ValueError("h must be > 0")
    twist = TwistStage(
        pivot=[0.5, 1.5, 0.0],
        target=[0.5 * side, 0.5 * side, 0.0],
        rise=h,
        dx=1.0,
        dy=3.0,
        offset=0.25 * math.pi,
    )
    p0, p1 = twist.start(), twist.end()
    up = np.array([0.0, 0.0, clearance])
    entry = TranslateStage(p0.rotation, p0.translation + up, p0.translation)
    exit_ = TranslateStage(p1.rotation, p1.translation, p1.translation - up)
    return MotionPath((entry, twist, exit_))


def section_placement(h: float, c: float) -> RigidPlacement:
    """Translate K down so that the window plane cuts it at height c*h."""
    return RigidPlacement(np.eye(3), [0.0, 0.0, -c * h])
