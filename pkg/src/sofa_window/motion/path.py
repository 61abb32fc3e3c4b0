"""Piecewise rigid motions of K with the window held fixed in the plane z = 0.

Every stage is a continuous map [0, 1] -> RigidPlacement; a MotionPath chains
stages whose endpoints agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np

from ..kernel import RigidPlacement, nearest_rotation, rot_z, unit

CHAIN_TOL = 1e-9


def _arr(x, shape) -> np.ndarray:
    a = np.array(x, dtype=float).reshape(shape)
    a.setflags(write=False)
    return a


class Stage:
    kind: ClassVar[str] = ""

    def at(self, s: float) -> RigidPlacement:
        raise NotImplementedError

    def reversed(self) -> Stage:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def start(self) -> RigidPlacement:
        return self.at(0.0)

    def end(self) -> RigidPlacement:
        return self.at(1.0)


@dataclass(frozen=True, eq=False)
class TranslateStage(Stage):
    """Fixed rotation, translation interpolated linearly from ``start_t`` to ``end_t``."""

    rotation: np.ndarray
    start_t: np.ndarray
    end_t: np.ndarray
    kind: ClassVar[str] = "translate"

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotation", RigidPlacement(self.rotation).rotation)
        object.__setattr__(self, "start_t", _arr(self.start_t, 3))
        object.__setattr__(self, "end_t", _arr(self.end_t, 3))

    @classmethod
    def between(cls, p: RigidPlacement, q: RigidPlacement) -> TranslateStage:
        if np.abs(p.rotation - q.rotation).max() > CHAIN_TOL:
            raise ValueError("a translation stage cannot change the rotation")
        return cls(p.rotation, p.translation, q.translation)

    def at(self, s: float) -> RigidPlacement:
        return RigidPlacement(self.rotation, (1 - s) * self.start_t + s * self.end_t)

    def reversed(self) -> TranslateStage:
        return TranslateStage(self.rotation, self.end_t, self.start_t)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "rotation": self.rotation.tolist(),
            "start": self.start_t.tolist(),
            "end": self.end_t.tolist(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> TranslateStage:
        return cls(nearest_rotation(d["rotation"]), d["start"], d["end"])


@dataclass(frozen=True, eq=False)
class RotateStage(Stage):
    """Rotation about a fixed line, angle linear in s, applied after ``base``."""

    point: np.ndarray
    direction: np.ndarray
    angle0: float
    angle1: float
    base: RigidPlacement
    kind: ClassVar[str] = "rotate"

    def __post_init__(self) -> None:
        object.__setattr__(self, "point", _arr(self.point, 3))
        object.__setattr__(self, "direction", _arr(unit(self.direction), 3))

    def at(self, s: float) -> RigidPlacement:
        ang = (1 - s) * self.angle0 + s * self.angle1
        return RigidPlacement.about_axis(self.point, self.direction, ang).compose(self.base)

    def reversed(self) -> RotateStage:
        return RotateStage(self.point, self.direction, self.angle1, self.angle0, self.base)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "point": self.point.tolist(),
            "direction": self.direction.tolist(),
            "angle0": self.angle0,
            "angle1": self.angle1,
            "base": self.base.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> RotateStage:
        return cls(d["point"], d["direction"], d["angle0"], d["angle1"], RigidPlacement.from_dict(d["base"]))


@dataclass(frozen=True, eq=False)
class TwistStage(Stage):
    """Rise through the window while turning about a vertical axis.

    With c = c0 + s (c1 - c0), the body point ``pivot + (0, 0, c * rise)``
    is carried to ``target`` and the body is turned about z by
    ``-(atan2(dy, dx - 2 c dx) - offset)``: the in-plane direction
    (dx (1 - 2c), dy) is kept at the fixed angle ``offset``.
    """

    pivot: np.ndarray
    target: np.ndarray
    rise: float
    dx: float
    dy: float
    offset: float
    c0: float = 0.0
    c1: float = 1.0
    kind: ClassVar[str] = "twist"

    def __post_init__(self) -> None:
        object.__setattr__(self, "pivot", _arr(self.pivot, 3))
        object.__setattr__(self, "target", _arr(self.target, 3))

    def psi(self, c: float) -> float:
        return math.atan2(self.dy, self.dx * (1 - 2 * c)) - self.offset

    def at(self, s: float) -> RigidPlacement:
        c = (1 - s) * self.c0 + s * self.c1
        R = rot_z(-self.psi(c))
        anchor = self.pivot + np.array([0.0, 0.0, c * self.rise])
        return RigidPlacement(R, self.target - R @ anchor)

    def reversed(self) -> TwistStage:
        return TwistStage(self.pivot, self.target, self.rise, self.dx, self.dy, self.offset, self.c1, self.c0)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "pivot": self.pivot.tolist(),
            "target": self.target.tolist(),
            "rise": self.rise,
            "dx": self.dx,
            "dy": self.dy,
            "offset": self.offset,
            "c0": self.c0,
            "c1": self.c1,
        }

    @classmethod
    def from_dict(cls, d: dict) -> TwistStage:
        return cls(d["pivot"], d["target"], d["rise"], d["dx"], d["dy"], d["offset"], d["c0"], d["c1"])


@dataclass(frozen=True, eq=False)
class KeyframeStage(Stage):
    """Piecewise-linear (x, y, z, theta) keyframes; rotation is rot_z(theta) @ base."""

    base: np.ndarray
    knots: np.ndarray
    kind: ClassVar[str] = "keyframes"

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", RigidPlacement(self.base).rotation)
        k = np.array(self.knots, dtype=float).reshape(-1, 4)
        if len(k) < 2:
            raise ValueError("need at least two keyframes")
        k.setflags(write=False)
        object.__setattr__(self, "knots", k)

    def at(self, s: float) -> RigidPlacement:
        m = len(self.knots) - 1
        u = min(max(s, 0.0), 1.0) * m
        i = min(int(u), m - 1)
        f = u - i
        x, y, z, th = (1 - f) * self.knots[i] + f * self.knots[i + 1]
        return RigidPlacement(rot_z(th) @ self.base, [x, y, z])

    def reversed(self) -> KeyframeStage:
        return KeyframeStage(self.base, self.knots[::-1])

    def to_dict(self) -> dict:
        return {"kind": self.kind, "base": self.base.tolist(), "knots": self.knots.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> KeyframeStage:
        return cls(nearest_rotation(d["base"]), d["knots"])


STAGE_KINDS: dict[str, type[Stage]] = {
    cls.kind: cls for cls in (TranslateStage, RotateStage, TwistStage, KeyframeStage)
}


@dataclass(frozen=True, eq=False)
class MotionPath:
    stages: tuple[Stage, ...]
    chain_tol: float = CHAIN_TOL

    def __post_init__(self) -> None:
        stages = tuple(self.stages)
        if not stages:
            raise ValueError("a motion path needs at least one stage")
        for k in range(1, len(stages)):
            gap = stages[k - 1].end().distance(stages[k].start())
            if gap > self.chain_tol:
                raise ValueError(f"stage {k} does not start where stage {k - 1} ends (gap {gap:.3g})")
        object.__setattr__(self, "stages", stages)

    def __len__(self) -> int:
        return len(self.stages)

    def at(self, stage: int, s: float) -> RigidPlacement:
        return self.stages[stage].at(s)

    def start(self) -> RigidPlacement:
        return self.stages[0].start()

    def end(self) -> RigidPlacement:
        return self.stages[-1].end()

    def samples(self, n: int):
        """Yield (stage index, parameter, placement) with n samples per stage."""
        if n < 2:
            raise ValueError("need at least 2 samples per stage")
        for k, st in enumerate(self.stages):
            for s in np.linspace(0.0, 1.0, n):
                yield k, float(s), st.at(float(s))

    def reversed(self) -> MotionPath:
        return MotionPath(tuple(st.reversed() for st in reversed(self.stages)), self.chain_tol)

    def then(self, other: MotionPath) -> MotionPath:
        return MotionPath(self.stages + other.stages, max(self.chain_tol, other.chain_tol))

    def to_dict(self) -> dict:
        return {"stages": [st.to_dict() for st in self.stages]}

    @classmethod
    def from_dict(cls, d: dict, chain_tol: float = CHAIN_TOL) -> MotionPath:
        """Inverse of ``to_dict``; loosen ``chain_tol`` for paths stored at reduced precision."""
        return cls(tuple(STAGE_KINDS[s["kind"]].from_dict(s) for s in d["stages"]), chain_tol)


def slide_path(start: RigidPlacement, direction, length: float) -> MotionPath:
    """A single translation of ``length`` along ``direction``."""
    end = RigidPlacement(start.rotation, start.translation + length * unit(direction))
    return MotionPath((TranslateStage.between(start, end),))


def slide_through(vertices, start: RigidPlacement, direction, clearance: float) -> MotionPath:
    """Translate along a downward ``direction`` until every vertex is ``clearance`` below z = 0."""
    d = unit(direction)
    if d[2] >= 0:
        raise ValueError("slide direction must point downward")
    zmax = float(start.apply(vertices)[:, 2].max())
    return slide_path(start, d, (zmax + clearance) / -d[2])


__all__ = [
    "KeyframeStage",
    "MotionPath",
    "RotateStage",
    "Stage",
    "TranslateStage",
    "TwistStage",
    "slide_path",
    "slide_through",
]
