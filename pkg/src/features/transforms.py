"""Unpooled and pooled feature transforms of queries and keys.

A transform applies a per-unit function ``h`` to each unit of a query/key
vector and either concatenates the results (unpooled) or pools them
(pooled). Scores are then plain inner products of transformed rows:

* F-StrIPE₁: ``h(a) = [a cos φ, a sin φ]`` per dimension; unpooled or pooled
  (summed over dimensions).
* RoPE: ``h`` rotates each dimension pair by ``φ``; unpooled only.
* RoPEPool: RoPE's rotated pair ``[u, v]`` pooled to ``u + v``; one scalar
  per pair. Its inner products reproduce the four-term RoPEPool expansion,
  including the ``Δ⁺`` terms.

Gains enter as ``sqrt(Λ_d)`` on both sides; phases ``Θ_d`` are added on the
query side only.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from numpy.typing import ArrayLike

from ..core.errors import DimensionMismatch, OddDimension, UnsupportedPooling
from ..core.params import make_params
from ..core.rng import box_muller, stream
from ..core.types import (
    FloatArray,
    InitScheme,
    Method,
    MethodTag,
    PEParams,
    Pooling,
    PositionalIndexSequence,
    QKMatrices,
    ScoreMatrix,
    Side,
    frozen,
)
from ..oracle.exact import check_compatible

logger = logging.getLogger(__name__)

SUPPORTED: dict[Method, tuple[Pooling, ...]] = {
    Method.FSTRIPE1: (Pooling.UNPOOLED, Pooling.POOLED),
    Method.ROPE: (Pooling.UNPOOLED,),
    Method.ROPEPOOL: (Pooling.POOLED,),
}


def default_pooling(method: Method) -> Pooling:
    """The pooling that defines *method* (F-StrIPE₁ defaults to unpooled)."""
    return SUPPORTED[method][0]


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Transformed rows, one per timestep."""

    rows: FloatArray
    pooling: Pooling
    method: Method

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", frozen(self.rows, ndim=2))

    @property
    def width(self) -> int:
        return int(self.rows.shape[1])


# ---------------------------------------------------------------------------
# Per-unit h functions
# ---------------------------------------------------------------------------


def _angle(p: ArrayLike, f: ArrayLike) -> float:
    pos = np.atleast_1d(np.asarray(p, dtype=np.float64))
    freq = np.atleast_1d(np.asarray(f, dtype=np.float64))
    if pos.shape != freq.shape:
        raise DimensionMismatch(
            f"position has L={pos.shape[0]}, frequency has L={freq.shape[0]}"
        )
    return float(pos @ freq)


def h_fstripe1(a: float, p: ArrayLike, f: ArrayLike, phase: float = 0.0) -> FloatArray:
    """``[a cos(<f, p> + phase), a sin(<f, p> + phase)]``."""
    theta = _angle(p, f) + phase
    return np.array([a * np.cos(theta), a * np.sin(theta)])


def h_rope(
    pair: ArrayLike, p: ArrayLike, f: ArrayLike, phase: float = 0.0
) -> FloatArray:
    """Rotate a dimension pair by ``<f, p> + phase``."""
    a1, a2 = np.asarray(pair, dtype=np.float64)
    theta = _angle(p, f) + phase
    c, s = np.cos(theta), np.sin(theta)
    return np.array([a1 * c - a2 * s, a2 * c + a1 * s])


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------


def _check_pooling(method: Method, pooling: Pooling) -> None:
    if pooling not in SUPPORTED[method]:
        raise UnsupportedPooling(
            f"{method.value} is not offered with {pooling.value} pooling"
        )


def unit_features(
    x: FloatArray,
    positions: FloatArray,
    method: Method,
    params: PEParams,
    side: Side,
) -> FloatArray:
    """Per-unit ``h`` outputs, shape ``(T, units, 2)``."""
    if method.pair_based and x.shape[1] % 2:
        raise OddDimension(
            f"{method.value} needs an even dimension, got D={x.shape[1]}"
        )
    angles = positions @ params.unit_frequencies.T
    if side is Side.QUERY:
        angles = angles + params.unit_phases
    c, s = np.cos(angles), np.sin(angles)
    scale = np.sqrt(params.unit_gains)
    if method is Method.FSTRIPE1:
        out = np.stack([x * c, x * s], axis=2)
    else:
        a1, a2 = x[:, 0::2], x[:, 1::2]
        out = np.stack([a1 * c - a2 * s, a2 * c + a1 * s], axis=2)
    return out * scale[None, :, None]


def transform_rows(
    x: ArrayLike,
    positions: PositionalIndexSequence,
    method: Method,
    params: PEParams,
    pooling: Pooling,
    side: Side = Side.QUERY,
) -> FeatureMatrix:
    """Apply the method's transform to every row of *x*."""
    _check_pooling(method, pooling)
    rows = np.asarray(x, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[0] != positions.length:
        raise DimensionMismatch(
            "need one position per row: rows "
            f"{rows.shape}, positions {positions.length}"
        )
    if rows.shape[1] != params.dim:
        raise DimensionMismatch(
            f"params expect D={params.dim}, rows have D={rows.shape[1]}"
        )
    if positions.label_dim != params.label_dim:
        raise DimensionMismatch(
            f"positions have L={positions.label_dim}, "
            f"frequencies have L={params.label_dim}"
        )
    h = unit_features(rows, positions.entries, method, params, side)
    if method is Method.ROPEPOOL:
        out = h[:, :, 0] + h[:, :, 1]
    elif pooling is Pooling.POOLED:
        out = np.add.reduce(h, axis=1)
    else:
        out = h.reshape(h.shape[0], -1)
    return FeatureMatrix(out, pooling, method)


def transform(
    x: ArrayLike,
    p: ArrayLike,
    method: Method,
    params: PEParams,
    pooling: Pooling,
    side: Side = Side.QUERY,
) -> FloatArray:
    """Transformed row for a single vector *x* at position *p*."""
    vec = np.asarray(x, dtype=np.float64).reshape(1, -1)
    pos = PositionalIndexSequence.vectors(
        np.atleast_1d(np.asarray(p, dtype=np.float64))[None, :]
    )
    return transform_rows(vec, pos, method, params, pooling, side).rows[0]


def transform_pair(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    method: Method,
    params: PEParams,
    pooling: Pooling,
) -> tuple[FeatureMatrix, FeatureMatrix]:
    """Query-side and key-side features for a full attention problem."""
    check_compatible(method, qk, p_q, p_k, params)
    fq = transform_rows(qk.Q, p_q, method, params, pooling, Side.QUERY)
    fk = transform_rows(qk.K, p_k, method, params, pooling, Side.KEY)
    return fq, fk


def transform_attention(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    method: Method,
    params: PEParams,
    pooling: Pooling,
) -> ScoreMatrix:
    """Scores as inner products of transformed query and key rows."""
    fq, fk = transform_pair(qk, p_q, p_k, method, params, pooling)
    tag = (
        MethodTag.TRANSFORM_POOLED
        if pooling is Pooling.POOLED
        else MethodTag.TRANSFORM_UNPOOLED
    )
    return ScoreMatrix(fq.rows @ fk.rows.T, tag)


# ---------------------------------------------------------------------------
# Cross-dimension residual (F-StrIPE₁)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidualStats:
    mean_abs: float
    max_abs: float


def cross_terms(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    params: PEParams,
) -> FloatArray:
    """``Σ_{d != d'} h(q_md) . h(k_nd')`` for F-StrIPE₁, shape ``(T_Q, T_K)``."""
    check_compatible(Method.FSTRIPE1, qk, p_q, p_k, params)
    hq = unit_features(qk.Q, p_q.entries, Method.FSTRIPE1, params, Side.QUERY)
    hk = unit_features(qk.K, p_k.entries, Method.FSTRIPE1, params, Side.KEY)
    off_diagonal = 1.0 - np.eye(params.units)
    return np.einsum("mdc,nec,de->mn", hq, hk, off_diagonal)


def cross_dimension_residual(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    params: PEParams,
) -> ResidualStats:
    """Mean and max of ``|pooled - unpooled|`` F-StrIPE₁ scores."""
    pooled = transform_attention(qk, p_q, p_k, Method.FSTRIPE1, params, Pooling.POOLED)
    unpooled = transform_attention(
        qk, p_q, p_k, Method.FSTRIPE1, params, Pooling.UNPOOLED
    )
    diff = np.abs(pooled.values - unpooled.values)
    if diff.size == 0:
        return ResidualStats(0.0, 0.0)
    return ResidualStats(float(diff.mean()), float(diff.max()))


@dataclass(frozen=True)
class DecayRow:
    dim: int
    mean_abs: float
    max_abs: float
    seeds: int


def residual_decay(
    dims: Iterable[int], seeds: int = 200, length: int = 16, base_seed: int = 0
) -> list[DecayRow]:
    """Monte-Carlo pooled-vs-unpooled residuals per dimension.

    Frequencies are drawn from U(0, 1] per dimension; queries and keys are
    random unit-norm rows over time positions ``0..length-1``.
    """
    rows: list[DecayRow] = []
    positions = PositionalIndexSequence.time(length)
    for dim in dims:
        means, maxes = [], []
        for s in range(seeds):
            params = make_params(
                Method.FSTRIPE1,
                dim,
                scheme=InitScheme.RANDOM_UNIFORM,
                seed=base_seed + s,
            )
            gen = stream(base_seed + s, dim, 1)
            q = box_muller(gen, (length, dim))
            k = box_muller(gen, (length, dim))
            q /= np.linalg.norm(q, axis=1, keepdims=True)
            k /= np.linalg.norm(k, axis=1, keepdims=True)
            stats = cross_dimension_residual(
                QKMatrices(q, k), positions, positions, params
            )
            means.append(stats.mean_abs)
            maxes.append(stats.max_abs)
        rows.append(DecayRow(dim, float(np.mean(means)), float(np.max(maxes)), seeds))
        logger.debug("residual_decay D=%d mean=%.4g", dim, rows[-1].mean_abs)
    return rows
