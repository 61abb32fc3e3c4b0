import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import random_rotation
from sofa_window.errors import InvalidWitness
from sofa_window.kernel import RigidPlacement, build_polytope
from sofa_window.motion import Rect, slide_through, validate_path
from sofa_window.sliding import (
    SlidingWitness,
    admissible_region,
    good_pair_search,
    slide_feasible,
    vertical_slide_witness,
    verticalize,
)
from sofa_window.translation import fixed_orientation_slide
from sofa_window.shapes import cube, regular_tetrahedron

seeds = st.integers(0, 2**31 - 1)


def _fits(K, w, a, b, tol=1e-9) -> bool:
    """Independent check of a witness: orthonormal axes with small enough extents."""
    x, y = np.asarray(w.x_axis), np.asarray(w.y_axis)
    return (
        abs(np.linalg.norm(x) - 1) < 1e-12
        and abs(np.linalg.norm(y) - 1) < 1e-12
        and abs(x @ y) < 1e-10
        and np.ptp(K.vertices @ x) <= a + tol
        and np.ptp(K.vertices @ y) <= b + tol
    )


def test_cube_region_is_the_three_axes():
    A = admissible_region(cube(), 1.0)
    assert sorted(np.abs(A.candidates).argmax(axis=1).tolist()) == [0, 1, 2]
    assert np.allclose(np.sort(np.abs(A.candidates), axis=1), [[0, 0, 1]] * 3)
    u = np.random.default_rng(0).normal(size=(500, 3))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    assert not np.any(A.contains(u))
    assert np.all(A.contains(np.vstack([np.eye(3), -np.eye(3)])))


def test_thin_bound_gives_empty_region():
    assert admissible_region(regular_tetrahedron(), 0.70).empty


def test_cube_good_pair_is_two_axes():
    A = admissible_region(cube(), 1.0)
    x, y = good_pair_search(A, A)
    ix, iy = np.abs(x).argmax(), np.abs(y).argmax()
    assert ix != iy
    assert np.allclose(np.abs(x), np.eye(3)[ix]) and np.allclose(np.abs(y), np.eye(3)[iy], atol=1e-12)


@given(seeds, st.floats(0.3, 2.0))
def test_region_membership_is_symmetric(seed, bound):
    rng = np.random.default_rng(seed)
    K = build_polytope(rng.normal(scale=0.5, size=(8, 3)))
    A = admissible_region(K, bound)
    u = rng.normal(size=(200, 3))
    u /= np.linalg.norm(u, axis=1, keepdims=True)
    assert np.array_equal(A.contains(u), A.contains(-u))


def test_cube_verdicts():
    ok = slide_feasible(cube(), 1.0, 1.0)
    assert ok.feasible and ok.grazing and _fits(cube(), ok.witness, 1.0, 1.0)
    assert not slide_feasible(cube(), 0.99, 10.0).feasible


def test_tetrahedron_verdicts_and_placement():
    K = regular_tetrahedron()
    assert not slide_feasible(K, 0.70, 0.70).feasible
    res = slide_feasible(K, 0.71, 0.71)
    assert res.feasible and _fits(K, res.witness, 0.71, 0.71)
    p = vertical_slide_witness(K, res.witness, 0.71, 0.71)
    q = p.apply(K.vertices)
    assert q[:, 0].min() >= -1e-9 and q[:, 0].max() <= 0.71 + 1e-9
    assert q[:, 1].min() >= -1e-9 and q[:, 1].max() <= 0.71 + 1e-9
    assert q[:, 2].min() > 0
    path = slide_through(K.vertices, p, [0, 0, -1], 0.01)
    assert validate_path(K, path, Rect(0.71, 0.71)).ok


def test_bad_witness_is_refused():
    with pytest.raises(InvalidWitness):
        vertical_slide_witness(cube(), SlidingWitness([1, 1, 0], [-1, 1, 0]), 1.0, 1.0)


def _random_case(seed):
    rng = np.random.default_rng(seed)
    K = build_polytope(rng.normal(scale=0.5, size=(rng.integers(4, 11), 3)))
    a, b = rng.uniform(0.5, 2.0, size=2)
    return rng, K, float(a), float(b)


@given(seeds)
def test_swapping_the_sides_swaps_the_axes(seed):
    _, K, a, b = _random_case(seed)
    r1, r2 = slide_feasible(K, a, b), slide_feasible(K, b, a)
    assert r1.feasible == r2.feasible
    if r1.feasible:
        swapped = SlidingWitness(r1.witness.y_axis, r1.witness.x_axis)
        assert _fits(K, swapped, b, a)


@given(seeds, st.floats(0.0, 0.5), st.floats(0.0, 0.5))
def test_monotone_in_window_size(seed, da, db):
    _, K, a, b = _random_case(seed)
    if slide_feasible(K, a, b).feasible:
        assert slide_feasible(K, a + da, b + db).feasible


@given(seeds)
def test_witnesses_pass_independent_check(seed):
    _, K, a, b = _random_case(seed)
    r = slide_feasible(K, a, b)
    if r.feasible:
        assert _fits(K, r.witness, a, b)


@given(seeds)
def test_rotating_the_body_keeps_the_verdict(seed):
    rng, K, a, b = _random_case(seed)
    R = random_rotation(rng)
    r1 = slide_feasible(K, a, b)
    r2 = slide_feasible(K.rotated(R), a, b)
    assert r1.feasible == r2.feasible
    if r1.feasible:
        assert _fits(K.rotated(R), r1.witness.rotated(R), a, b)


def test_random_octahedral_body_agrees_with_view_grid():
    rng = np.random.default_rng(8)
    K = build_polytope(rng.normal(scale=0.5, size=(8, 3)))
    for a, b in [(0.6, 0.9), (0.8, 1.2), (1.0, 1.0), (0.5, 2.0)]:
        slack = oracles.view_grid_slack(K.vertices, a, b)
        verdict = slide_feasible(K, a, b).feasible
        if abs(slack) > 1e-3:
            assert verdict == (slack <= 0), (a, b, slack)


@given(seeds)
def test_oblique_slides_become_vertical(seed):
    rng = np.random.default_rng(seed)
    K = build_polytope(rng.normal(scale=0.4, size=(9, 3)))
    a, b = rng.uniform(1.5, 3.0, size=2)
    line = fixed_orientation_slide(K, random_rotation(rng), a, b)
    if line is None:
        return
    Kr = K.rotated(line.placement.rotation)
    start = RigidPlacement(np.eye(3), line.placement.translation)
    p, cover = verticalize(Kr, start, line.direction, a, b)
    q = p.apply(Kr.vertices)
    assert q[:, 0].min() >= -1e-9 and q[:, 0].max() <= a + 1e-9
    assert q[:, 1].min() >= -1e-9 and q[:, 1].max() <= b + 1e-9
    assert validate_path(Kr, slide_through(Kr.vertices, p, [0, 0, -1], 0.01), Rect(a, b), 200).ok
