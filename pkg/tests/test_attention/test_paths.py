import tracemalloc

import numpy as np
import pytest

from src.attention.feature_maps import ExpRandomFeatures, PositiveShift
from src.attention.paths import linear_path, quadratic_path
from src.core.errors import DimensionMismatch, ZeroNormalizer
from src.core.params import make_params
from src.core.rng import gaussian
from src.core.types import (
    InitScheme,
    Method,
    Pooling,
    PositionalIndexSequence,
    QKMatrices,
)
from src.features.transforms import SUPPORTED

CASES = [
    (method, pooling) for method, poolings in SUPPORTED.items() for pooling in poolings
]
VARIANTS = [PositiveShift(), ExpRandomFeatures(r=16, seed=5)]


@pytest.mark.parametrize(("method", "pooling"), CASES)
@pytest.mark.parametrize("variant", VARIANTS, ids=["shift", "random"])
def test_linear_matches_quadratic(instance, method, pooling, variant):
    qk, p_q, p_k, params = instance(method, length=24, values=3)
    lin = linear_path(qk, p_q, p_k, method, params, pooling, variant)
    quad = quadratic_path(qk, p_q, p_k, method, params, pooling, variant)
    assert lin.Y.shape == (24, 3)
    assert np.allclose(lin.Y, quad.Y, atol=1e-10)
    assert np.allclose(lin.normalizers, quad.normalizers, rtol=1e-12)


def test_outputs_are_convex_combinations_of_values(instance):
    qk, p_q, p_k, params = instance(Method.ROPE, values=2)
    out = linear_path(qk, p_q, p_k, Method.ROPE, params, Pooling.UNPOOLED)
    assert np.all(out.Y <= qk.V.max(axis=0) + 1e-12)
    assert np.all(out.Y >= qk.V.min(axis=0) - 1e-12)


def test_values_are_required(instance):
    qk, p_q, p_k, params = instance(Method.ROPE)
    with pytest.raises(DimensionMismatch):
        linear_path(qk, p_q, p_k, Method.ROPE, params, Pooling.UNPOOLED)


def test_vanishing_normalizer():
    params = make_params(
        Method.FSTRIPE1, 1, scheme=InitScheme.EXPLICIT, frequencies=[0.0]
    )
    qk = QKMatrices([[1000.0]], [[1000.0]], [[1.0]])
    p = PositionalIndexSequence.vectors([[0.0]])
    variant = ExpRandomFeatures(r=4, seed=0)
    with pytest.raises(ZeroNormalizer):
        linear_path(qk, p, p, Method.FSTRIPE1, params, Pooling.POOLED, variant)
    with pytest.raises(ZeroNormalizer):
        quadratic_path(qk, p, p, Method.FSTRIPE1, params, Pooling.POOLED, variant)


def test_linear_path_never_allocates_the_score_matrix():
    length, dim = 2048, 8
    qk = QKMatrices(
        gaussian(0, (length, dim), 0), gaussian(0, (length, dim), 1), gaussian(
            0, (length, 2), 2
        )
    )
    positions = PositionalIndexSequence.time(length)
    params = make_params(Method.ROPE, dim)
    tracemalloc.start()
    try:
        linear_path(qk, positions, positions, Method.ROPE, params, Pooling.UNPOOLED)
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    assert peak < length * length * 8 / 4
