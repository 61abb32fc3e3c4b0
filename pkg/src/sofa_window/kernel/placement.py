"""Rigid placements of 3-space and a few rotation constructors."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.transform import Rotation

from ..tolerances import EPS_UNIT


def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v)
    if n < EPS_UNIT:
        raise ValueError("cannot normalise a zero vector")
    return v / n


def axis_angle_matrix(axis, angle: float) -> np.ndarray:
    return Rotation.from_rotvec(unit(axis) * float(angle)).as_matrix()


def rotation_taking(src, dst) -> np.ndarray:
    """Smallest rotation taking unit vector ``src`` onto unit vector ``dst``."""
    src, dst = unit(src), unit(dst)
    c = float(np.dot(src, dst))
    axis = np.cross(src, dst)
    s = np.linalg.norm(axis)
    if s < 1e-14:
        if c > 0:
            return np.eye(3)
        # antiparallel: half turn about any perpendicular axis
        helper = np.eye(3)[int(np.argmin(np.abs(src)))]
        return axis_angle_matrix(np.cross(src, helper), np.pi)
    return axis_angle_matrix(axis, np.arctan2(s, c))


def nearest_rotation(m) -> np.ndarray:
    """Closest proper rotation to a nearly orthonormal matrix (e.g. one read back from rounded text)."""
    return Rotation.from_matrix(np.asarray(m, dtype=float).reshape(3, 3)).as_matrix()


def rot_z(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class RigidPlacement:
    """The map ``p -> rotation @ p + translation``."""

    rotation: np.ndarray = field(default_factory=lambda: np.eye(3))
    translation: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self) -> None:
        r = np.array(self.rotation, dtype=float).reshape(3, 3)
        t = np.array(self.translation, dtype=float).reshape(3)
        if not np.allclose(r.T @ r, np.eye(3), atol=1e-10) or np.linalg.det(r) < 0:
            raise ValueError("rotation must be orthonormal with det +1")
        r.setflags(write=False)
        t.setflags(write=False)
        object.__setattr__(self, "rotation", r)
        object.__setattr__(self, "translation", t)

    @classmethod
    def identity(cls) -> RigidPlacement:
        return cls()

    @classmethod
    def about_axis(cls, point, direction, angle: float) -> RigidPlacement:
        """Rotation by ``angle`` about the line through ``point`` along ``direction``."""
        r = axis_angle_matrix(direction, angle)
        q = np.asarray(point, dtype=float)
        return cls(r, q - r @ q)

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.rotation.T + self.translation

    def compose(self, other: RigidPlacement) -> RigidPlacement:
        """``self ∘ other``: apply ``other`` first."""
        return RigidPlacement(
            self.rotation @ other.rotation,
            self.rotation @ other.translation + self.translation,
        )

    def inverse(self) -> RigidPlacement:
        rt = self.rotation.T
        return RigidPlacement(rt, -rt @ self.translation)

    def distance(self, other: RigidPlacement) -> float:
        """Max-entry distance between the two 3x4 matrices."""
        return float(
            max(
                np.abs(self.rotation - other.rotation).max(),
                np.abs(self.translation - other.translation).max(),
            )
        )

    def to_dict(self) -> dict:
        return {"rotation": self.rotation.tolist(), "translation": self.translation.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> RigidPlacement:
        return cls(nearest_rotation(d["rotation"]), np.array(d["translation"]))
