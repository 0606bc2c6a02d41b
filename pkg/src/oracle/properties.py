"""Invariance checks built on the exact oracle: lag-shift and mirror."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import OddDimension
from ..core.types import (
    FloatArray,
    Method,
    PEParams,
    PositionalIndexSequence,
    QKMatrices,
)
from .exact import exact_attention

# Pinned RoPEPool witnesses (D = 2, unit gain, zero phase).
ROPEPOOL_SHIFT_WITNESS: dict[str, float] = {
    "q0": 1.0, "q1": 0.0, "k0": 1.0, "k1": 0.0,
    "p_q": 0.0, "p_k": 0.0, "frequency": 1.0, "offset": np.pi / 4,
}
ROPEPOOL_MIRROR_WITNESS: dict[str, float] = {
    "psi": np.pi / 4, "xi": np.pi / 2, "dpsi": 0.3, "dxi": 0.3, "frequency": 0.7,
}


def shift_gap(
    method: Method,
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    params: PEParams,
    offset: ArrayLike,
) -> float:
    """Max-norm change of the exact scores when all positions move by *offset*."""
    base = exact_attention(method, qk, p_q, p_k, params)
    moved = exact_attention(
        method, qk, p_q.shifted(offset), p_k.shifted(offset), params
    )
    return base.max_abs_diff(moved)


def rotate_pairs(x: ArrayLike, angles: ArrayLike) -> FloatArray:
    """Rotate each consecutive pair of *x* by the matching angle."""
    vec = np.asarray(x, dtype=np.float64)
    if vec.shape[-1] % 2:
        raise OddDimension(
            f"pair rotation needs an even dimension, got {vec.shape[-1]}"
        )
    a1, a2 = vec[..., 0::2], vec[..., 1::2]
    c, s = np.cos(angles), np.sin(angles)
    out = np.empty_like(vec)
    out[..., 0::2] = a1 * c - a2 * s
    out[..., 1::2] = a2 * c + a1 * s
    return out


def mirror_scores(
    method: Method,
    content: ArrayLike,
    position: ArrayLike,
    rotation: ArrayLike,
    lag: ArrayLike,
    params: PEParams,
) -> tuple[float, float]:
    """Scores of one query against its mirrored keys.

    The ``+`` key carries the query content with each pair rotated by
    ``+rotation`` and sits at ``position + lag``; the ``-`` key uses
    ``-rotation`` and ``position - lag``.
    """
    q = np.asarray(content, dtype=np.float64).reshape(1, -1)
    p = np.asarray(position, dtype=np.float64).reshape(1, -1)
    c = np.asarray(lag, dtype=np.float64).reshape(1, -1)
    angles = np.asarray(rotation, dtype=np.float64)
    keys = np.vstack([rotate_pairs(q, angles), rotate_pairs(q, -angles)])
    qk = QKMatrices(q, keys)
    p_q = PositionalIndexSequence.vectors(p)
    p_k = PositionalIndexSequence.vectors(np.vstack([p + c, p - c]))
    scores = exact_attention(method, qk, p_q, p_k, params).values[0]
    return float(scores[0]), float(scores[1])


def tie_pair_frequencies(params: PEParams) -> PEParams:
    """F-StrIPE₁ params whose frequencies are shared within each dimension pair."""
    if params.dim % 2:
        raise OddDimension(f"pair tying needs an even dimension, got D={params.dim}")
    freqs = params.frequencies.copy()
    freqs[:, 1::2, :] = freqs[:, 0::2, :]
    return params.with_values(frequencies=freqs)
