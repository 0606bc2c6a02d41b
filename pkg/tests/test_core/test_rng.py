import numpy as np

from src.core.rng import box_muller, gaussian, stream, uniform_open_closed


def test_same_key_gives_identical_draws():
    a = gaussian(5, (4, 3), 1, 2)
    b = gaussian(5, (4, 3), 1, 2)
    assert np.array_equal(a, b)


def test_different_keys_are_independent_streams():
    assert not np.array_equal(gaussian(5, 6, 1), gaussian(5, 6, 2))
    assert not np.array_equal(gaussian(5, 6, 1), gaussian(6, 6, 1))


def test_uniform_open_closed_range():
    draws = uniform_open_closed(stream(0), 10_000)
    assert draws.min() > 0.0
    assert draws.max() <= 1.0


def test_box_muller_odd_size_and_shape():
    z = box_muller(stream(1), (3, 5))
    assert z.shape == (3, 5)
    assert np.all(np.isfinite(z))


def test_box_muller_moments():
    z = box_muller(stream(2), 200_000)
    assert abs(z.mean()) < 0.01
    assert abs(z.var() - 1.0) < 0.02
