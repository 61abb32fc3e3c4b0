"""JSON scene documents: schema, parsing and conversion to library objects."""

from __future__ import annotations

import json
from typing import Annotated, Literal, Union

import numpy as np
import pydantic
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import SofaWindowError
from ..kernel import Polytope, RigidPlacement, axis_angle_matrix, build_polytope, nearest_rotation
from ..motion import MotionPath, WindowSpec, window_from_dict
from ..shapes import PRESETS
from ..tolerances import DEFAULT

# paths read back from 9-digit records chain up to rounding error
READ_CHAIN_TOL = 1e-6

Vec2 = tuple[float, float]
Vec3 = tuple[float, float, float]


class ParseError(SofaWindowError):
    """Malformed document: bad JSON, wrong types, missing or unknown fields."""

    code = "parse_error"

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.field = field


class ValidationError(SofaWindowError):
    """Well-formed document whose values break an invariant."""

    code = "validation_error"


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PolytopeIn(_Strict):
    vertices: list[Vec3] | None = None
    preset: Literal["cube", "regular_tetrahedron", "must_rotate_tetrahedron"] | None = None
    h: float | None = None

    @model_validator(mode="after")
    def _one_source(self):
        if (self.vertices is None) == (self.preset is None):
            raise ValueError("polytope needs exactly one of 'vertices' or 'preset'")
        if self.h is not None and self.preset != "must_rotate_tetrahedron":
            raise ValueError("polytope.h only applies to the must_rotate_tetrahedron preset")
        return self

    def build(self) -> Polytope:
        if self.vertices is not None:
            return build_polytope(np.array(self.vertices))
        kw = {} if self.h is None else {"h": self.h}
        return PRESETS[self.preset](**kw)


class RectIn(_Strict):
    kind: Literal["rect"]
    a: float
    b: float


class GateIn(_Strict):
    kind: Literal["gate"]
    a: float


class CircleIn(_Strict):
    kind: Literal["circle"]
    d: float
    center: Vec2 = (0.0, 0.0)


class PolygonIn(_Strict):
    kind: Literal["polygon"]
    vertices: list[Vec2]


WindowIn = Annotated[Union[RectIn, GateIn, CircleIn, PolygonIn], Field(discriminator="kind")]


class OrientationIn(_Strict):
    """Either an axis with an angle in radians or a 3x3 rotation matrix."""

    axis: Vec3 | None = None
    angle: float | None = None
    matrix: tuple[Vec3, Vec3, Vec3] | None = None

    @model_validator(mode="after")
    def _one_form(self):
        axis_form = self.axis is not None or self.angle is not None
        if axis_form == (self.matrix is not None):
            raise ValueError("orientation needs either 'axis' and 'angle' or 'matrix'")
        if axis_form and (self.axis is None or self.angle is None):
            raise ValueError("orientation needs both 'axis' and 'angle'")
        return self

    def rotation(self) -> np.ndarray:
        if self.matrix is not None:
            m = np.array(self.matrix, dtype=float)
            if not np.allclose(m.T @ m, np.eye(3), atol=1e-6) or np.linalg.det(m) < 0:
                raise ValueError("orientation.matrix must be a rotation")
            return nearest_rotation(m)
        return axis_angle_matrix(self.axis, self.angle)


class Params(_Strict):
    tol: float = DEFAULT.eps_geom
    opt_tol: float = DEFAULT.opt_tol
    samples: int = 1000
    grid: int | None = None
    h: float = 100.0
    frames: int = 8
    artifact: Literal["shadow", "sections", "region"] = "shadow"

    @model_validator(mode="after")
    def _positive(self):
        for name in ("tol", "opt_tol", "h"):
            if not getattr(self, name) > 0:
                raise ValueError(f"params.{name} must be > 0")
        if self.samples < 2:
            raise ValueError("params.samples must be >= 2")
        if self.grid is not None and self.grid < 8:
            raise ValueError("params.grid must be >= 8")
        if self.frames < 1:
            raise ValueError("params.frames must be >= 1")
        return self


class Scene(_Strict):
    polytope: PolytopeIn | None = None
    window: WindowIn | None = None
    orientation: OrientationIn | None = None
    command: str | None = None
    params: Params = Field(default_factory=Params)
    path: dict | None = None

    @model_validator(mode="after")
    def _buildable(self):
        # every part must turn into a library object; failures become validation errors
        if self.window is not None:
            window_from_dict(self.window.model_dump())
        if self.orientation is not None:
            self.orientation.rotation()
        if self.polytope is not None:
            try:
                self.polytope.build()
            except SofaWindowError as e:
                raise ValueError(f"polytope: {e}") from e
        if self.path is not None:
            try:
                MotionPath.from_dict(self.path, READ_CHAIN_TOL)
            except (KeyError, TypeError) as e:
                raise ValueError(f"path: malformed stage data ({e})") from e
            except ValueError as e:
                raise ValueError(f"path: {e}") from e
        return self

    def body(self) -> Polytope | None:
        """The polytope with the scene orientation applied."""
        if self.polytope is None:
            return None
        K = self.polytope.build()
        return K if self.orientation is None else K.rotated(self.orientation.rotation())

    def rotation(self) -> np.ndarray:
        return np.eye(3) if self.orientation is None else self.orientation.rotation()

    def window_spec(self) -> WindowSpec | None:
        return None if self.window is None else window_from_dict(self.window.model_dump())

    def motion_path(self) -> MotionPath | None:
        return None if self.path is None else MotionPath.from_dict(self.path, READ_CHAIN_TOL)

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def parse_scene(text: str | bytes) -> Scene:
    """Parse and validate a scene document."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"not UTF-8: {e.reason}") from e
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from e
    if not isinstance(raw, dict):
        raise ParseError("a scene must be a JSON object", line=1)
    try:
        return Scene.model_validate(raw)
    except pydantic.ValidationError as e:
        err = e.errors(include_url=False)[0]
        field = ".".join(str(p) for p in err["loc"])
        if err["type"] == "value_error":
            raise ValidationError(str(err["ctx"]["error"])) from None
        raise ParseError(err["msg"], field=field or None) from None


def load_scene(path: str) -> Scene:
    with open(path, "rb") as fh:
        return parse_scene(fh.read())
