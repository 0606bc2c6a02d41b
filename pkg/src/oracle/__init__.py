"""Brute-force reference scores, positional matrices and frequency gradients."""

from __future__ import annotations

from .exact import (
    PositionalMatrix,
    canonical_attention,
    exact_attention,
    frequency_gradient,
    positional_matrix_rff,
)

__all__ = [
    "PositionalMatrix",
    "canonical_attention",
    "exact_attention",
    "frequency_gradient",
    "positional_matrix_rff",
]
