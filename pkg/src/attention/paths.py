"""Linear-time and quadratic attention over PE-enriched features.

Both paths transform queries and keys with :mod:`src.features`, apply a
nonnegative feature map and normalize each output row by the sum of its
scores. The linear path never forms the ``T_Q x T_K`` score matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..core.errors import DimensionMismatch, ZeroNormalizer
from ..core.types import (
    FloatArray,
    Method,
    PEParams,
    Pooling,
    PositionalIndexSequence,
    QKMatrices,
    frozen,
)
from ..features.transforms import transform_pair
from .feature_maps import FeatureMap, PositiveShift, phi

logger = logging.getLogger(__name__)

NORMALIZER_FLOOR = 1e-30


@dataclass(frozen=True, eq=False)
class AttentionOutput:
    """Output rows ``Y`` and their normalizers."""

    Y: FloatArray
    normalizers: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "Y", frozen(self.Y, ndim=2))
        object.__setattr__(self, "normalizers", frozen(self.normalizers, ndim=1))


def _mapped_features(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    method: Method,
    params: PEParams,
    pooling: Pooling,
    variant: FeatureMap,
) -> tuple[FloatArray, FloatArray, FloatArray]:
    if qk.V is None:
        raise DimensionMismatch("attention paths need values V")
    fq, fk = transform_pair(qk, p_q, p_k, method, params, pooling)
    return phi(fq.rows, variant), phi(fk.rows, variant), qk.V


def _check_normalizers(den: FloatArray) -> None:
    bad = np.flatnonzero(den <= NORMALIZER_FLOOR)
    if bad.size:
        raise ZeroNormalizer(
            f"{bad.size} normalizer(s) <= {NORMALIZER_FLOOR:g}, first at query {bad[0]}"
        )


def linear_path(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    method: Method,
    params: PEParams,
    pooling: Pooling,
    variant: FeatureMap = PositiveShift(),
) -> AttentionOutput:
    """``y_m = φ(q'_m)·Σ_n φ(k'_n)ᵀ v_n / φ(q'_m)·Σ_n φ(k'_n)``."""
    fq, fk, values = _mapped_features(qk, p_q, p_k, method, params, pooling, variant)
    kv = fk.T @ values
    ksum = fk.sum(axis=0)
    num = fq @ kv
    den = fq @ ksum
    _check_normalizers(den)
    logger.debug(
        "linear_path T_Q=%d T_K=%d width=%d", fq.shape[0], fk.shape[0], fk.shape[1]
    )
    return AttentionOutput(num / den[:, None], den)


def quadratic_path(
    qk: QKMatrices,
    p_q: PositionalIndexSequence,
    p_k: PositionalIndexSequence,
    method: Method,
    params: PEParams,
    pooling: Pooling,
    variant: FeatureMap = PositiveShift(),
) -> AttentionOutput:
    """Reference path that materializes ``<φ(q'_m), φ(k'_n)>``."""
    fq, fk, values = _mapped_features(qk, p_q, p_k, method, params, pooling, variant)
    scores = fq @ fk.T
    den = scores.sum(axis=1)
    _check_normalizers(den)
    return AttentionOutput(scores @ values / den[:, None], den)
