import numpy as np
import pytest

from sofa_window.sampling import fibonacci_sphere, from_angles, refine_direction, to_angles


def test_grid_points_are_unit_vectors():
    full, half = fibonacci_sphere(500), fibonacci_sphere(500, hemisphere=True)
    assert np.allclose(np.linalg.norm(full, axis=1), 1)
    assert (half[:, 2] >= 0).all() and full[:, 2].min() < 0
    assert abs(full.mean(axis=0)).max() < 0.01


def test_angles_round_trip():
    v = np.array([0.3, -0.4, 0.5])
    v /= np.linalg.norm(v)
    assert np.allclose(from_angles(*to_angles(v)), v)


def test_refinement_finds_a_nearby_minimum():
    target = np.array([1.0, 2.0, 2.0]) / 3
    v, f = refine_direction(lambda u: -float(u @ target), [1.0, 1.5, 2.5], 0.1)
    assert f == pytest.approx(-1.0, abs=1e-9)
    assert np.allclose(v, target, atol=1e-4)


def test_bad_grid_size():
    with pytest.raises(ValueError):
        fibonacci_sphere(0)
