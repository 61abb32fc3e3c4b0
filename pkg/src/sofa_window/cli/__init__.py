"""Command-line front end: scenes in, result records and SVG snapshots out."""

from .commands import COMMANDS, COVERAGE, execute, run
from .records import ResultRecord
from .scene import ParseError, Scene, ValidationError, load_scene, parse_scene
from .svg import render_svg, section_frames

__all__ = [
    "COMMANDS", "COVERAGE", "ParseError", "ResultRecord", "Scene", "ValidationError",
    "execute", "load_scene", "parse_scene", "render_svg", "run", "section_frames",
]
