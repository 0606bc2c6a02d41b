import numpy as np
import pytest

from src.core.errors import DimensionMismatch, UnitCountMismatch
from src.core.params import make_params
from src.core.types import InitScheme, Method, PositionalIndexSequence, QKMatrices
from src.oracle.exact import (
    canonical_attention,
    exact_attention,
    frequency_gradient,
    positional_matrix_rff,
    unit_scores,
)


def _explicit(method, dim, freqs, **kwargs):
    return make_params(
        method, dim, scheme=InitScheme.EXPLICIT, frequencies=freqs, **kwargs
    )


def test_rope_matches_rotated_dot_product():
    q, k = np.array([[0.3, -1.2]]), np.array([[0.8, 0.5]])
    p_q, p_k, f = 2.0, 0.5, 0.9
    params = _explicit(Method.ROPE, 2, [f])

    def rot(v, angle):
        c, s = np.cos(angle), np.sin(angle)
        return np.array([v[0] * c - v[1] * s, v[1] * c + v[0] * s])

    expected = rot(q[0], f * p_q) @ rot(k[0], f * p_k)
    scores = exact_attention(
        Method.ROPE, QKMatrices(q, k), PositionalIndexSequence.vectors([[p_q]]),
        PositionalIndexSequence.vectors([[p_k]]), params,
    )
    assert scores.values[0, 0] == pytest.approx(expected, abs=1e-12)


def test_fstripe1_single_dimension_closed_form():
    params = _explicit(Method.FSTRIPE1, 1, [0.4], gains=[2.0], phases=[0.3])
    qk = QKMatrices([[1.5]], [[-0.5]])
    scores = exact_attention(
        Method.FSTRIPE1, qk, PositionalIndexSequence.vectors([[3.0]]),
        PositionalIndexSequence.vectors([[1.0]]), params,
    )
    assert scores.values[0, 0] == pytest.approx(
        2.0 * 1.5 * -0.5 * np.cos(0.4 * 2.0 + 0.3)
    )


def test_zero_frequency_reduces_to_dot_product(instance):
    qk, p_q, p_k, params = instance(Method.ROPE)
    flat = params.with_values(frequencies=np.zeros_like(params.frequencies))
    scores = exact_attention(Method.ROPE, qk, p_q, p_k, flat)
    assert np.allclose(scores.values, qk.Q @ qk.K.T, atol=1e-12)


def test_unit_scores_sum_to_total(instance):
    qk, p_q, p_k, params = instance(Method.ROPEPOOL)
    parts = unit_scores(Method.ROPEPOOL, qk, p_q, p_k, params)
    assert parts.shape == (16, 16, 4)
    total = exact_attention(Method.ROPEPOOL, qk, p_q, p_k, params)
    assert np.allclose(parts.sum(axis=2), total.values)


def test_canonical_form_matches_fstripe1(instance):
    qk, p_q, p_k, params = instance(Method.FSTRIPE1)
    pmats = [positional_matrix_rff(params, d, p_q, p_k) for d in range(params.units)]
    canon = canonical_attention(qk, pmats)
    exact = exact_attention(Method.FSTRIPE1, qk, p_q, p_k, params)
    assert canon.max_abs_diff(exact) < 1e-12


def test_canonical_needs_one_matrix_per_dimension(instance):
    qk, p_q, p_k, params = instance(Method.FSTRIPE1)
    pmats = [positional_matrix_rff(params, d, p_q, p_k) for d in range(3)]
    with pytest.raises(UnitCountMismatch):
        canonical_attention(qk, pmats)


def test_incompatible_inputs(instance):
    qk, p_q, p_k, params = instance(Method.ROPE)
    with pytest.raises(DimensionMismatch):
        exact_attention(Method.ROPEPOOL, qk, p_q, p_k, params)
    with pytest.raises(DimensionMismatch):
        exact_attention(Method.ROPE, qk, PositionalIndexSequence.time(3), p_k, params)
    two_d = PositionalIndexSequence.vectors(np.zeros((16, 2)))
    with pytest.raises(DimensionMismatch):
        exact_attention(Method.ROPE, qk, two_d, two_d, params)


def test_empty_inputs_give_empty_scores():
    params = make_params(Method.ROPE, 4)
    qk = QKMatrices(np.zeros((0, 4)), np.zeros((0, 4)))
    empty = PositionalIndexSequence.vectors(np.zeros((0, 1)))
    assert exact_attention(Method.ROPE, qk, empty, empty, params).shape == (0, 0)


@pytest.mark.parametrize("method", list(Method))
def test_frequency_gradient_matches_central_differences(instance, method):
    qk, p_q, p_k, params = instance(method, seed=3, length=6, dim=4, label_dim=2)
    step = 1e-6
    for unit in range(params.units):
        grad = frequency_gradient(method, qk, p_q, p_k, params, unit)
        assert grad.shape == (6, 6, 2)
        for comp in range(2):
            hi, lo = params.frequencies.copy(), params.frequencies.copy()
            hi[0, unit, comp] += step
            lo[0, unit, comp] -= step
            up = params.with_values(frequencies=hi)
            down = params.with_values(frequencies=lo)
            numeric = (
                exact_attention(method, qk, p_q, p_k, up).values
                - exact_attention(method, qk, p_q, p_k, down).values
            ) / (2 * step)
            assert np.allclose(numeric, grad[:, :, comp], atol=1e-5)


def test_gradient_unit_out_of_range(instance):
    qk, p_q, p_k, params = instance(Method.FSTRIPE1)
    with pytest.raises(DimensionMismatch):
        frequency_gradient(Method.FSTRIPE1, qk, p_q, p_k, params, params.units)
