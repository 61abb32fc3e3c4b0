import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sofa_window.circular import (
    CrossParams,
    cross_triangle_lengths,
    find_delta1,
    find_delta2,
    five_step_motion,
    five_step_plan,
    min_cylinder_diameter,
    tri_enclosing_diameter,
    vertex_certificate,
    vertex_cross_min,
)
from sofa_window.errors import DegenerateTriangle, PreconditionViolated
from sofa_window.kernel import cross_section_z0, enclosing_disc
from sofa_window.motion import Circle, validate_path
from sofa_window.shapes import REGULAR_TETRAHEDRON_VERTICES, cube, regular_tetrahedron

A, B, C, D = REGULAR_TETRAHEDRON_VERTICES
CUBE_THINNEST_CYLINDER = 1.41421356  # regression value, cross-checked below
unit_pairs = st.tuples(st.floats(0.01, 0.99), st.floats(0.01, 0.99))


def _sections_3d(x, y):
    """The two middle-vertex sections built directly from coordinates."""
    U, V = A + x * (C - A), A + y * (D - A)
    z = (x - y) / x
    w = (x - y) / (x * (1 - y))
    S, T = D + z * (A - D), D + w * (B - D)
    return (B, U, V), (C, S, T)


def _sq_sides(P, Q, R):
    return sorted([float((P - Q) @ (P - Q)), float((Q - R) @ (Q - R)), float((R - P) @ (R - P))])


def test_section_sides_at_the_symmetric_point():
    buv, _ = cross_triangle_lengths(CrossParams(0.391113, 0.391113))
    assert sorted(buv) == pytest.approx(sorted([0.761857, 0.761857, 0.152970]), abs=1e-6)


@given(unit_pairs)
def test_section_sides_match_coordinates(p):
    x, y = max(p), min(p)
    if x - y < 1e-6:
        return
    buv, cst = cross_triangle_lengths(CrossParams(x, y))
    t1, t2 = _sections_3d(x, y)
    assert sorted(buv) == pytest.approx(_sq_sides(*t1), abs=1e-12)
    assert sorted(cst) == pytest.approx(_sq_sides(*t2), abs=1e-12)


@given(unit_pairs)
def test_middle_sections_are_parallel(p):
    x, y = max(p), min(p)
    if x - y < 1e-6:
        return
    (P1, Q1, R1), (P2, Q2, R2) = _sections_3d(x, y)
    n1 = np.cross(Q1 - P1, R1 - P1)
    n2 = np.cross(Q2 - P2, R2 - P2)
    n1 /= np.linalg.norm(n1)
    n2 /= np.linalg.norm(n2)
    assert np.linalg.norm(np.cross(n1, n2)) < 1e-9


def test_triangle_disc_closed_forms():
    assert tri_enclosing_diameter([1, 1, 1]) == pytest.approx(2 / math.sqrt(3), abs=1e-12)
    assert tri_enclosing_diameter([1, 1, 2]) == pytest.approx(math.sqrt(2), abs=1e-12)
    buv, _ = cross_triangle_lengths(CrossParams(0.391113, 0.391113))
    assert tri_enclosing_diameter(buv) == pytest.approx(0.895611, abs=1e-4)
    with pytest.raises(DegenerateTriangle):
        tri_enclosing_diameter([1, 1, 5])


@given(st.lists(st.floats(-3, 3), min_size=6, max_size=6))
def test_triangle_disc_matches_generic_disc(c):
    P = np.array(c).reshape(3, 2)
    s = _sq_sides(*P)
    if min(s) < 1e-6:
        return
    assert tri_enclosing_diameter(s) == pytest.approx(enclosing_disc(P).diameter, abs=1e-10 * max(1.0, max(s)))


def test_thresholds_are_ordered():
    assert find_delta2().value < find_delta1().value
    assert vertex_cross_min() == find_delta2().value


def test_vertex_minimum_is_a_lower_bound():
    rng = np.random.default_rng(3)
    m = vertex_cross_min()
    for x, y in rng.uniform(0, 1, size=(100, 2)):
        buv, _ = cross_triangle_lengths(CrossParams(x, y))
        assert tri_enclosing_diameter(buv) >= m - 1e-6


def test_vertex_certificate_agrees_with_threshold():
    cert = vertex_certificate(0.89)
    assert cert.impossible
    assert min(cert.diameters) == pytest.approx(vertex_cross_min(), abs=1e-6)
    assert not vertex_certificate(0.9).impossible


def test_five_step_stages_chain():
    path = five_step_motion(0.8957)
    for s0, s1 in zip(path.stages, path.stages[1:]):
        assert s0.end().distance(s1.start()) < 1e-9


def test_five_step_sections_fit_the_disc():
    d = 0.8957
    path = five_step_motion(d)
    K = regular_tetrahedron()
    assert validate_path(K, path, Circle(d), 200).ok
    for _, _, p in path.samples(40):
        sec = cross_section_z0(K, p).vertices
        if len(sec):
            assert np.hypot(sec[:, 0], sec[:, 1]).max() <= 0.5 * d + 1e-9


def test_five_step_needs_the_threshold():
    with pytest.raises(PreconditionViolated):
        five_step_plan(0.89)


def test_cube_thinnest_cylinder():
    r = min_cylinder_diameter(cube())
    assert r.value == pytest.approx(CUBE_THINNEST_CYLINDER, abs=1e-8)
    assert abs(oracles.thinnest_cylinder(cube().vertices, n_dirs=300, refine=2) - r.value) < 1e-6


def test_flat_square_thinnest_cylinder():
    # looking along a side the square collapses to a unit segment
    pts = np.array([[x, y, 0.0] for x in (0.0, 1.0) for y in (0.0, 1.0)])
    r = min_cylinder_diameter(pts)
    assert r.value == pytest.approx(1.0, abs=1e-8)
    assert abs(oracles.thinnest_cylinder(pts, n_dirs=300, refine=2) - r.value) < 1e-6
