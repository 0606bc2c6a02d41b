"""Unpooled and pooled feature transforms for PE-enriched attention."""

from __future__ import annotations

from .transforms import (
    FeatureMatrix,
    cross_dimension_residual,
    h_fstripe1,
    h_rope,
    residual_decay,
    transform,
    transform_attention,
    transform_rows,
)

__all__ = [
    "FeatureMatrix",
    "cross_dimension_residual",
    "h_fstripe1",
    "h_rope",
    "residual_decay",
    "transform",
    "transform_attention",
    "transform_rows",
]
