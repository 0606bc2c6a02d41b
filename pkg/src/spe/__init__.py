"""Stochastic positional encoding: noisy RFF features and their limits."""

from __future__ import annotations

from .sff import (
    CovarianceStats,
    SFFConfig,
    covariance_stats,
    ideal_positional_matrix,
    rff_attention,
    rff_features,
    sff_features,
    spe_attention,
)

__all__ = [
    "CovarianceStats",
    "SFFConfig",
    "covariance_stats",
    "ideal_positional_matrix",
    "rff_attention",
    "rff_features",
    "sff_features",
    "spe_attention",
]
