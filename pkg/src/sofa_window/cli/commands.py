"""Command registry: each command maps a scene to a verdict, a witness and metrics."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .. import circular, sliding, translation
from ..errors import PreconditionViolated, RenderError, SofaWindowError
from ..kernel import Polytope, RigidPlacement, cross_section_z0, extent, width3
from ..motion import (
    MUST_ROTATE_SIDE,
    Circle,
    ConvexPolygon,
    Gate,
    MotionPath,
    Rect,
    must_rotate_motion,
    must_rotate_section,
    planner_2dof,
    slide_through,
    tan_spq,
    validate_path,
)
from ..motion.demos import section_placement
from ..shapes import must_rotate_tetrahedron, regular_tetrahedron
from .records import ResultRecord
from .scene import Scene
from .svg import render_sections, render_shadow, render_svg

DOWN = np.array([0.0, 0.0, -1.0])


@dataclass
class Outcome:
    verdict: str
    witness: dict | None = None
    metrics: dict = field(default_factory=dict)
    path: MotionPath | None = None
    svg: str | None = None
    # body and window the path refers to, for drawing its sections
    body: Polytope | None = None
    window: object = None


COMMANDS: dict[str, Callable[[Scene], Outcome]] = {}
# library operations each command reaches, checked by the test suite
COVERAGE: dict[str, tuple[str, ...]] = {}


def command(name: str, *ops: str):
    def register(fn):
        COMMANDS[name] = fn
        COVERAGE[name] = ops
        return fn

    return register


def _body(scene: Scene) -> Polytope:
    K = scene.body()
    if K is None:
        raise PreconditionViolated("this command needs a polytope")
    return K


def _window(scene: Scene, *kinds):
    W = scene.window_spec()
    if W is None or not isinstance(W, kinds):
        names = " or ".join(k.kind for k in kinds)
        raise PreconditionViolated(f"this command needs a {names} window")
    return W


def _validated(K: Polytope, path: MotionPath, W, scene: Scene) -> dict:
    return validate_path(K, path, W, scene.params.samples, scene.params.tol).to_dict()


@command("hull", "build_polytope")
def cmd_hull(scene: Scene) -> Outcome:
    K = _body(scene)
    metrics = {
        "n_vertices": K.n_vertices,
        "n_edges": len(K.edges),
        "n_faces": len(K.faces),
        "euler_characteristic": K.euler_characteristic(),
        "diameter": K.diameter,
        "surface_area": K.surface_area(),
    }
    witness = {"vertices": K.vertices, "faces": [list(f) for f in K.faces]}
    return Outcome("success", witness, metrics)


@command("width", "width3", "extent")
def cmd_width(scene: Scene) -> Outcome:
    K = _body(scene)
    w, n = width3(K)
    lo, hi = extent(K, n)
    return Outcome("success", {"normal": n, "support": [lo, hi]}, {"width": w})


@command("gate", "gate_feasible", "width3", "validate_path", "config_free")
def cmd_gate(scene: Scene) -> Outcome:
    K, W = _body(scene), _window(scene, Gate)
    g = translation.gate_feasible(K, W.a, scene.params.tol)
    if g is None:
        return Outcome("infeasible", metrics={"width": width3(K)[0], "a": W.a})
    path = g.path(K)
    witness = {"normal": g.normal, "start": g.orientation.to_dict(), "path": path.to_dict()}
    return Outcome("feasible", witness, {"width": g.width, "a": W.a, "validation": _validated(K, path, W, scene)}, path)


@command(
    "slide",
    "slide_feasible",
    "admissible_region",
    "good_pair_search",
    "vertical_slide_witness",
    "validate_path",
    "config_free",
)
def cmd_slide(scene: Scene) -> Outcome:
    K, W = _body(scene), _window(scene, Rect)
    res = sliding.slide_feasible(K, W.a, W.b, scene.params.tol)
    if not res.feasible:
        return Outcome("infeasible", metrics={"a": W.a, "b": W.b})
    start = sliding.vertical_slide_witness(K, res.witness, W.a, W.b, scene.params.tol)
    path = slide_through(K.vertices, start, DOWN, sliding.default_clearance(K))
    witness = {
        "x_axis": res.witness.x_axis,
        "y_axis": res.witness.y_axis,
        "direction": res.witness.v,
        "start": start.to_dict(),
        "path": path.to_dict(),
    }
    metrics = {
        "margin": res.margin,
        "grazing": res.grazing,
        "extent_x": res.extent_x,
        "extent_y": res.extent_y,
        "validation": _validated(K, path, W, scene),
    }
    return Outcome("feasible", witness, metrics, path)


@command("fixed-slide", "fixed_orientation_slide", "min_xslab", "shadow_cover", "validate_path")
def cmd_fixed_slide(scene: Scene) -> Outcome:
    W = _window(scene, Rect)
    if scene.polytope is None:
        raise PreconditionViolated("this command needs a polytope")
    K0, R = scene.polytope.build(), scene.rotation()
    line = translation.fixed_orientation_slide(K0, R, W.a, W.b, scene.params.tol)
    if line is None:
        return Outcome("infeasible", metrics={"a": W.a, "b": W.b})
    # the same motion, written for the already oriented body
    K = scene.body()
    start = RigidPlacement(np.eye(3), line.placement.translation)
    clearance = sliding.default_clearance(K)
    path = slide_through(K.vertices, start, line.direction, clearance)
    vstart, cover = sliding.verticalize(K, start, line.direction, W.a, W.b)
    vpath = slide_through(K.vertices, vstart, DOWN, clearance)
    witness = {
        "point": line.point,
        "direction": line.direction,
        "start": start.to_dict(),
        "path": path.to_dict(),
        "vertical_start": vstart.to_dict(),
        "vertical_path": vpath.to_dict(),
    }
    metrics = {
        "ratios": list(line.ratios),
        "cover_case": cover.case,
        "validation": _validated(K, path, W, scene),
        "vertical_validation": _validated(K, vpath, W, scene),
    }
    return Outcome("feasible", witness, metrics, path)


@command("slide-trade", "slide_trade", "gate_feasible", "width2", "project_shadow")
def cmd_slide_trade(scene: Scene) -> Outcome:
    K, W = _body(scene), _window(scene, Rect)
    short, long_ = min(W.a, W.b), float(np.hypot(W.a, W.b))
    w = translation.slide_trade(K, W.a, W.b, scene.params.tol)
    metrics = {"short": short, "long": long_}
    if w is None:
        return Outcome("infeasible", metrics=metrics)
    metrics["margin"] = sliding.witness_margin(K, w, short, long_)
    return Outcome("feasible", {"x_axis": w.x_axis, "y_axis": w.y_axis}, metrics)


@command("project-width", "projection_width_max", "project_shadow", "width2")
def cmd_project_width(scene: Scene) -> Outcome:
    K = _body(scene)
    r = translation.projection_width_max(K, resolution=scene.params.grid or 4000)
    metrics = {"value": r.value, "grid_value": r.grid_value, "samples": r.samples}
    return Outcome("success", {"direction": r.direction}, metrics)


@command(
    "circle-thresholds",
    "find_delta1",
    "find_delta2",
    "vertex_cross_min",
    "cross_triangle_lengths",
    "tri_enclosing_diameter",
    "min_cylinder_diameter",
    "enclosing_disc",
)
def cmd_circle_thresholds(scene: Scene) -> Outcome:
    d1, d2 = circular.find_delta1(), circular.find_delta2()
    sides = circular.cross_triangle_lengths(circular.CrossParams(*d1.argmin))
    K = scene.body()
    if K is None:
        K = regular_tetrahedron()
    cyl = circular.min_cylinder_diameter(K, resolution=max(scene.params.grid or 10_000, 10_000))
    metrics = {
        "delta1": d1.value,
        "delta1_argmin": d1.argmin,
        "delta1_grid_value": d1.grid_value,
        "delta1_triangle_diameters": [circular.tri_enclosing_diameter(s) for s in sides],
        "delta2": d2.value,
        "delta2_argmin": d2.argmin,
        "vertex_cross_min": circular.vertex_cross_min(),
        "min_cylinder": cyl.value,
        "min_cylinder_grid": cyl.grid_min,
    }
    W = scene.window_spec()
    if isinstance(W, Circle):
        cert = circular.vertex_certificate(W.d)
        metrics["vertex_certificate"] = {"d": W.d, "diameters": cert.diameters, "impossible": cert.impossible}
    return Outcome("success", {"cylinder_axis": cyl.axis}, metrics)


@command("tetra-motion", "five_step_motion", "cross_section_z0", "enclosing_disc", "validate_path")
def cmd_tetra_motion(scene: Scene) -> Outcome:
    W = _window(scene, Circle)
    if W.center != (0.0, 0.0):
        raise PreconditionViolated("the passage is built for a disc centred at the origin")
    d2 = circular.find_delta2().value
    if W.d < d2 - scene.params.tol:
        cert = circular.vertex_certificate(W.d)
        metrics = {"d": W.d, "delta2": d2, "vertex_certificate": {"diameters": cert.diameters, "impossible": cert.impossible}}
        return Outcome("infeasible", metrics=metrics, body=regular_tetrahedron(), window=W)
    plan = circular.five_step_plan(W.d, scene.params.tol)
    K = regular_tetrahedron()
    metrics = {
        "d": W.d,
        "x": plan.x,
        "rectangle_diagonal": plan.rectangle_diagonal,
        "validation": _validated(K, plan.path, W, scene),
    }
    witness = {"stages": list(plan.stage_names), "rectangle": plan.rectangle, "path": plan.path.to_dict()}
    return Outcome("feasible", witness, metrics, plan.path, body=K, window=W)


@command(
    "must-rotate",
    "must_rotate_motion",
    "slide_feasible",
    "fixed_orientation_slide",
    "cross_section_z0",
    "validate_path",
)
def cmd_must_rotate(scene: Scene) -> Outcome:
    h = scene.params.h
    W = scene.window_spec() or Rect(MUST_ROTATE_SIDE, MUST_ROTATE_SIDE)
    if not isinstance(W, Rect) or W.a != W.b:
        raise PreconditionViolated("this command needs a square window")
    K = must_rotate_tetrahedron(h)
    slide = sliding.slide_feasible(K, W.a, W.b, scene.params.tol)
    fixed = translation.fixed_orientation_slide(K, np.eye(3), W.a, W.b, scene.params.tol)
    path = must_rotate_motion(h, W.a)
    errors = []
    for c in (0.25, 0.5, 0.75):
        got = cross_section_z0(K, section_placement(h, c)).vertices
        want = must_rotate_section(c)
        errors.append(float(np.abs(got[:, None, :] - want[None, :, :]).max(axis=2).min(axis=1).max()))
    metrics = {
        "h": h,
        "side": W.a,
        "slide_feasible": slide.feasible,
        "fixed_slide_feasible": fixed is not None,
        "section_error": max(errors),
        "tan_spq": tan_spq(Fraction(1, 2)),
        "validation": _validated(K, path, W, scene),
    }
    v = metrics["validation"]
    verdict = "feasible" if v["free_at_all_samples"] and v["start_above"] and v["end_below"] else "infeasible"
    return Outcome(verdict, {"path": path.to_dict()}, metrics, path, body=K, window=W)


@command("plan-2dof", "planner_2dof", "config_free", "validate_path", "enclosing_disc")
def cmd_plan_2dof(scene: Scene) -> Outcome:
    K, W = _body(scene), _window(scene, Rect, Gate, Circle, ConvexPolygon)
    grid = scene.params.grid or 64
    res = planner_2dof(K, W, grid, grid, tol=scene.params.tol)
    if res is None:
        return Outcome("infeasible", metrics={"grid": grid, "note": "no path on this grid"})
    witness = {"nodes": res.nodes, "path": res.path.to_dict()}
    metrics = {"grid": grid, "stages": len(res.path), "validation": _validated(K, res.path, W, scene)}
    return Outcome("feasible", witness, metrics, res.path)


@command("validate", "validate_path", "config_free", "cross_section_z0")
def cmd_validate(scene: Scene) -> Outcome:
    K, W = _body(scene), _window(scene, Rect, Gate, Circle, ConvexPolygon)
    path = scene.motion_path()
    if path is None:
        raise PreconditionViolated("this command needs a path")
    report = _validated(K, path, W, scene)
    ok = report["free_at_all_samples"] and report["start_above"] and report["end_below"]
    return Outcome("feasible" if ok else "infeasible", None, {"validation": report}, path)


@command("render", "project_shadow", "fits_in_rect", "cross_section_z0", "admissible_region")
def cmd_render(scene: Scene) -> Outcome:
    svg = render_svg(scene)
    return Outcome("success", {"svg": svg}, {"artifact": scene.params.artifact}, svg=svg)


def execute(name: str, scene: Scene) -> tuple[ResultRecord, Outcome | None]:
    """Run a command; library errors become an 'error' record rather than escaping."""
    t0 = time.perf_counter()
    out = None
    try:
        if name not in COMMANDS:
            raise PreconditionViolated(f"unknown command {name!r}")
        out = COMMANDS[name](scene)
        rec = ResultRecord(name, out.verdict, out.witness, out.metrics)
    except SofaWindowError as e:
        rec = ResultRecord(name, "error", error={"code": e.code, "message": str(e)})
    except ValueError as e:
        rec = ResultRecord(name, "error", error={"code": "invalid_argument", "message": str(e)})
    rec.timing = {"seconds": round(time.perf_counter() - t0, 6)}
    return rec, out


def run(name: str, scene: Scene) -> ResultRecord:
    return execute(name, scene)[0]


def artifact_svg(scene: Scene, out: Outcome) -> str:
    """The natural picture for a command: its svg, the sections of its path, or a shadow."""
    if out.svg is not None:
        return out.svg
    K = out.body if out.body is not None else scene.body()
    W = out.window if out.window is not None else scene.window_spec()
    if K is None or W is None:
        raise RenderError("nothing to draw: the command has no body or no window")
    if out.path is not None:
        return render_sections(K, out.path, W, scene.params.frames, scene.params.tol)
    return render_shadow(K, W, scene.params.tol)
