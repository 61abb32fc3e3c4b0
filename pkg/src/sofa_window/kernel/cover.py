"""Placing the oblique shadow of a rectangle back inside the rectangle.

Projecting a rectangle W (lying in a plane at dihedral angle alpha) onto the
xy-plane is, up to congruence, the contraction of W toward the hinge line l by
the factor cos(alpha). The result is a parallelogram that always fits inside a
congruent copy of W; :func:`shadow_cover` builds that placement explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..tolerances import EPS_GEOM


@dataclass(frozen=True)
class CoverPlacement:
    """Planar rigid map ``p -> R(angle) @ (p - center) + center + shift``.

    ``corners`` are the images of the contracted corners, in the order of the
    rectangle corners (0,0), (a,0), (a,b), (0,b).
    """

    angle: float
    shift: np.ndarray
    center: np.ndarray
    corners: np.ndarray
    case: str

    def apply(self, points) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        rot = np.array([[c, -s], [s, c]])
        p = np.asarray(points, dtype=float) - self.center
        return p @ rot.T + self.center + self.shift


def rect_corners(a: float, b: float) -> np.ndarray:
    return np.array([[0.0, 0.0], [a, 0.0], [a, b], [0.0, b]])


def contract(points, a: float, b: float, alpha: float, beta: float) -> np.ndarray:
    """Move points toward the line through the rectangle center at angle beta by cos(alpha)."""
    center = np.array([0.5 * a, 0.5 * b])
    lam = np.array([math.cos(beta), math.sin(beta)])
    mu = np.array([-lam[1], lam[0]])
    p = np.asarray(points, dtype=float) - center
    along = p @ lam
    across = p @ mu
    return center + np.outer(along, lam) + math.cos(alpha) * np.outer(across, mu)


def _angle_at(o, p, q) -> float:
    u, v = p - o, q - o
    return math.atan2(abs(u[0] * v[1] - u[1] * v[0]), float(u @ v))


def _direction(v) -> float:
    return math.atan2(v[1], v[0])


def _labelings():
    # the eight relabelings of a cyclically ordered quadrilateral
    for start in range(4):
        yield [(start + k) % 4 for k in range(4)]
        yield [(start - k) % 4 for k in range(4)]


def shadow_cover(
    a: float, b: float, alpha: float, beta: float, tol: float = EPS_GEOM
) -> CoverPlacement:
    """Rigid placement of the contracted rectangle inside [0, a] x [0, b].

    Follows the two constructive cases: if the contracted diagonal angle at A
    does not exceed the original one, the contracted diagonal A'C' is laid on
    AC (centered); otherwise side A'B' is laid parallel to AB. Ties take the
    diagonal case.
    """
    if not (a > 0 and b > 0):
        raise ValueError("a and b must be > 0")
    if not (0 <= alpha < 0.5 * math.pi):
        raise ValueError("alpha must lie in [0, pi/2)")
    W = rect_corners(a, b)
    center = np.array([0.5 * a, 0.5 * b])
    S = contract(W, a, b, alpha, beta)

    def placed(angle: float, case: str) -> CoverPlacement:
        c, s = math.cos(angle), math.sin(angle)
        img = (S - center) @ np.array([[c, -s], [s, c]]).T + center
        return CoverPlacement(angle, np.zeros(2), center, img, case)

    if alpha == 0 or abs(math.sin(2 * beta)) < 1e-12:
        # pure one-axis contraction toward a midline needs no motion
        return placed(0.0, "identity")

    mu = np.array([-math.sin(beta), math.cos(beta)])
    side = (W - center) @ mu
    zero = 1e-12 * max(a, b)
    chosen = None
    for lab in _labelings():
        A, B, C, D = lab
        sb, sc, sa, sd = side[B], side[C], side[A], side[D]
        same_bc = sb * sc >= -zero**2
        bc_sign = sb if abs(sb) > zero else sc
        ad_sign = sa if abs(sa) > zero else sd
        if not (same_bc and sa * sd >= -zero**2 and bc_sign * ad_sign < 0):
            continue
        # l must meet the ray from B through C: C is the nearer of the two to l
        if abs(sc) < abs(sb) - zero or (abs(sc) <= zero < abs(sb)):
            chosen = lab
            break
    if chosen is None:  # pragma: no cover - only the parallel case lands here
        return placed(0.0, "identity")

    A, B, C, D = chosen
    orig_angle = _angle_at(W[A], W[C], W[B])
    new_angle = _angle_at(S[A], S[C], S[B])
    if new_angle <= orig_angle + 1e-15:
        rot = _direction(W[C] - W[A]) - _direction(S[C] - S[A])
        result = placed(rot, "diagonal")
    else:
        rot = _direction(W[B] - W[A]) - _direction(S[B] - S[A])
        result = placed(rot, "parallel")
    return result


def cover_slack(placement: CoverPlacement, a: float, b: float) -> float:
    """Largest coordinate violation of the placed corners (<= 0 means inside)."""
    p = placement.corners
    return float(max((-p[:, 0]).max(), (p[:, 0] - a).max(), (-p[:, 1]).max(), (p[:, 1] - b).max()))
