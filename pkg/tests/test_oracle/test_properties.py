import numpy as np
import pytest

from src.core.errors import OddDimension
from src.core.params import make_params
from src.core.types import InitScheme, Method, PositionalIndexSequence, QKMatrices
from src.oracle.properties import (
    ROPEPOOL_MIRROR_WITNESS,
    ROPEPOOL_SHIFT_WITNESS,
    mirror_scores,
    rotate_pairs,
    shift_gap,
    tie_pair_frequencies,
)


@pytest.mark.parametrize("method", [Method.FSTRIPE1, Method.ROPE])
def test_lag_only_methods_are_shift_invariant(instance, method):
    qk, p_q, p_k, params = instance(method)
    assert shift_gap(method, qk, p_q, p_k, params, [3.7]) < 1e-10


def test_ropepool_shift_witness():
    w = ROPEPOOL_SHIFT_WITNESS
    params = make_params(
        Method.ROPEPOOL, 2, scheme=InitScheme.EXPLICIT, frequencies=[w["frequency"]]
    )
    qk = QKMatrices([[w["q0"], w["q1"]]], [[w["k0"], w["k1"]]])
    p = PositionalIndexSequence.vectors([[0.0]])
    gap = shift_gap(Method.ROPEPOOL, qk, p, p, params, [w["offset"]])
    # 1 + sin(0) at the origin, 1 + sin(pi/2) after the move
    assert gap == pytest.approx(1.0)


def test_rotate_pairs():
    out = rotate_pairs([1.0, 0.0, 0.0, 2.0], [np.pi / 2, np.pi])
    assert np.allclose(out, [0.0, 1.0, 0.0, -2.0])


def test_rotate_pairs_odd_dimension():
    with pytest.raises(OddDimension):
        rotate_pairs([1.0, 2.0, 3.0], [0.1])


def test_rope_mirror_symmetry():
    params = make_params(Method.ROPE, 6, scheme=InitScheme.RANDOM_UNIFORM, seed=2)
    plus, minus = mirror_scores(
        Method.ROPE,
        [0.5, -1.0, 2.0, 0.1, -0.3, 0.7],
        [1.3],
        [0.4, 2.0, -1.1],
        [0.8],
        params,
    )
    assert plus == pytest.approx(minus, abs=1e-12)


def test_fstripe1_mirror_symmetry_with_tied_pairs():
    params = tie_pair_frequencies(
        make_params(Method.FSTRIPE1, 4, scheme=InitScheme.RANDOM_UNIFORM, seed=5)
    )
    plus, minus = mirror_scores(
        Method.FSTRIPE1, [1.0, 2.0, -0.5, 0.3], [0.2], [0.9, -0.4], [1.7], params
    )
    assert plus == pytest.approx(minus, abs=1e-12)


def test_ropepool_breaks_mirror_symmetry():
    w = ROPEPOOL_MIRROR_WITNESS
    params = make_params(
        Method.ROPEPOOL, 2, scheme=InitScheme.EXPLICIT, frequencies=[w["frequency"]]
    )
    content = [np.cos(w["psi"]), np.sin(w["psi"])]
    plus, minus = mirror_scores(
        Method.ROPEPOOL, content, [w["xi"]], [w["dpsi"]], [w["dxi"]], params
    )
    assert plus == pytest.approx(-0.035, abs=2e-3)
    assert minus == pytest.approx(0.754, abs=2e-3)


def test_tie_pair_frequencies():
    params = make_params(Method.FSTRIPE1, 4, scheme=InitScheme.RANDOM_UNIFORM, seed=1)
    tied = tie_pair_frequencies(params).unit_frequencies
    assert np.array_equal(tied[0::2], tied[1::2])
    assert np.array_equal(tied[0::2], params.unit_frequencies[0::2])
