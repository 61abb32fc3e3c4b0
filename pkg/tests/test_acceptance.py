"""Acceptance criteria, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

import oracles
from conftest import random_rotation
from sofa_window.circular import (
    find_delta1,
    find_delta2,
    five_step_plan,
    min_cylinder_diameter,
    vertex_certificate,
    vertex_cross_min,
)
from sofa_window.cli import parse_scene, run
from sofa_window.kernel import build_polytope, cover_slack, cross_section_z0, shadow_cover, width3
from sofa_window.motion import MUST_ROTATE_SIDE, Circle, Rect, must_rotate_motion, must_rotate_section, tan_spq, validate_path
from sofa_window.motion.demos import section_placement
from sofa_window.shapes import cube, must_rotate_tetrahedron, regular_tetrahedron
from sofa_window.sliding import slide_feasible
from sofa_window.translation import fixed_orientation_slide, gate_feasible, projection_width_max

RESULTS: list[str] = []


def report(name: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_delta1_reproduction():
    find_delta1.cache_clear()
    t0 = time.perf_counter()
    find_delta1()
    elapsed = time.perf_counter() - t0
    rec = run("circle-thresholds", parse_scene('{"polytope": {"preset": "regular_tetrahedron"}}'))
    v, (x, y) = rec.metrics["delta1"], rec.metrics["delta1_argmin"]
    ok = abs(v - 0.901388) <= 1e-4 and abs(x - 0.43400) <= 5e-3 and abs(y - 0.30265) <= 5e-3 and elapsed < 60
    report("delta1", ok, f"value {v:.9g} at ({x:.6f}, {y:.6f}) from the command record; search took {elapsed:.2f} s")


def test_delta2_reproduction():
    r = find_delta2()
    x, y = r.argmin
    ok = abs(r.value - 0.895611) <= 1e-4 and abs(x - 0.391113) <= 5e-3 and abs(y - 0.391113) <= 5e-3
    ok = ok and vertex_cross_min() == r.value
    report("delta2", ok, f"value {r.value:.9g} at ({x:.6f}, {y:.6f}); vertex_cross_min {vertex_cross_min():.9g}")


def test_mid_motion_rectangle():
    d = five_step_plan(find_delta2().value + 1e-4).rectangle_diagonal
    report("rectangle diagonal", abs(d - 0.72368) <= 1e-4, f"{d:.9g} vs 0.72368")


def test_cylinder_bound():
    r = min_cylinder_diameter(regular_tetrahedron())
    ok = 1 - 1e-3 <= r.value <= 1 + 1e-3 and r.grid_min >= 1 - 1e-3
    report("cylinder", ok, f"min {r.value:.9g}, least grid sample {r.grid_min:.9g} over {r.samples} axes")


def test_width_and_gate():
    K = regular_tetrahedron()
    w = width3(K)[0]
    ok = abs(w - 1 / math.sqrt(2)) <= 1e-9 and gate_feasible(K, 0.70) is None and gate_feasible(K, 0.71) is not None
    report("width / gate", ok, f"width {w:.12f}; gate 0.70 closed, 0.71 open")


def test_cube_sliding():
    K = cube()
    yes, no = slide_feasible(K, 1.0, 1.0), slide_feasible(K, 0.99, 10.0)
    g_yes = oracles.view_grid_slack(K.vertices, 1.0, 1.0)
    g_no = oracles.view_grid_slack(K.vertices, 0.99, 10.0)
    ok = yes.feasible and not no.feasible and g_yes <= 1e-9 and g_no > 0
    report("cube sliding", ok, f"1x1 feasible (grid slack {g_yes:.2e}), 0.99x10 infeasible (grid slack {g_no:.2e})")


def test_oracle_equivalence():
    rng = np.random.default_rng(20240601)
    hard, band, yes = 0, 0, 0
    for _ in range(50):
        K = build_polytope(rng.normal(size=(int(rng.integers(4, 11)), 3)))
        w = width3(K)[0]
        a = float(w * rng.uniform(0.95, 1.5))
        b = float(rng.uniform(a, 1.2 * K.diameter))
        if rng.random() < 0.5:
            a, b = b, a
        verdict = slide_feasible(K, a, b).feasible
        yes += verdict
        slack = oracles.view_grid_slack(K.vertices, a, b)
        if abs(slack) <= 1e-3:
            band += 1
        elif verdict != (slack <= 0):
            hard += 1
    report("oracle equivalence", hard == 0, f"50 cases ({yes} feasible), {hard} hard disagreements, {band} inside the 1e-3 band")


def test_must_rotate_demo():
    h, s = 100.0, MUST_ROTATE_SIDE
    K = must_rotate_tetrahedron(h)
    rng = np.random.default_rng(61)
    no_slide = not slide_feasible(K, s, s).feasible
    no_fixed = fixed_orientation_slide(K, np.eye(3), s, s) is None and all(
        fixed_orientation_slide(K, random_rotation(rng), s, s) is None for _ in range(20)
    )
    rep = validate_path(K, must_rotate_motion(h), Rect(s, s), 1000, 1e-9)
    err = 0.0
    for c in rng.uniform(0.001, 0.999, size=100):
        got = cross_section_z0(K, section_placement(h, c)).vertices
        err = max(err, oracles.closest_point_match(got, must_rotate_section(c)))
    tans = {tan_spq(Fraction(k, 1000)) for k in range(1, 1000)}
    ok = no_slide and no_fixed and rep.ok and err <= 1e-9 and tans == {Fraction(3, 4)}
    report(
        "must-rotate",
        ok,
        f"slide {'closed' if no_slide else 'OPEN'}, translation {'closed' if no_fixed else 'OPEN'}, "
        f"twist valid={rep.ok} (max violation {rep.max_violation:.1e}), section error {err:.1e}, tan SPQ = {sorted(tans)}",
    )


def test_five_step_and_certificate():
    d = find_delta2().value + 1e-4
    rep = validate_path(regular_tetrahedron(), five_step_plan(d).path, Circle(d), 1000)
    cert = vertex_certificate(0.89)
    ok = rep.ok and cert.impossible and all(v > 0.89 for v in cert.diameters)
    report("five-step / certificate", ok, f"d={d:.9g} valid={rep.ok}; at 0.89 vertex sections {min(cert.diameters):.9g} > 0.89")


def test_shadow_cover_suite():
    rng = np.random.default_rng(22)
    worst = -math.inf
    for _ in range(200):
        a, b = rng.uniform(0.1, 10, size=2)
        alpha, beta = rng.uniform(0, 0.5 * math.pi - 1e-6), rng.uniform(-math.pi, math.pi)
        worst = max(worst, cover_slack(shadow_cover(a, b, alpha, beta), a, b))
    report("shadow cover", worst <= 1e-9, f"200 placements, worst corner overshoot {worst:.2e}")


def test_widest_shadow_bound():
    v = projection_width_max(regular_tetrahedron()).value
    report("widest shadow", v <= 0.895611 + 1e-3, f"{v:.9g} <= {0.895611 + 1e-3:.6f}")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
