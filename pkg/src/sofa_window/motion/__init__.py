"""Rigid motions through a fixed window: representation, validation, planners."""

from .demos import MUST_ROTATE_SIDE, must_rotate_motion, must_rotate_section, tan_spq
from .path import KeyframeStage, MotionPath, RotateStage, Stage, TranslateStage, TwistStage, slide_path, slide_through
from .planner import PlanResult, planner_2dof
from .windows import (
    Circle,
    ConvexPolygon,
    FreeVerdict,
    Gate,
    Rect,
    ValidationReport,
    WindowSpec,
    config_free,
    validate_path,
    window_from_dict,
)

__all__ = [
    "Circle", "ConvexPolygon", "FreeVerdict", "Gate", "KeyframeStage", "MotionPath",
    "Rect", "RotateStage", "Stage", "TranslateStage", "TwistStage", "ValidationReport",
    "WindowSpec", "config_free", "slide_path", "slide_through", "validate_path", "window_from_dict",
    "MUST_ROTATE_SIDE", "PlanResult", "must_rotate_motion", "must_rotate_section", "planner_2dof", "tan_spq",
]
