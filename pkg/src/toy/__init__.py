"""Angular toy experiment on Gaussian contexts."""

from __future__ import annotations

from .dataset import ToyDataset, context_centers, generate_toy
from .scores import (
    Heatmap,
    discriminability,
    heatmap,
    mirror_asymmetry,
    toy_score,
    toy_score_consistency,
)

__all__ = [
    "Heatmap",
    "ToyDataset",
    "context_centers",
    "discriminability",
    "generate_toy",
    "heatmap",
    "mirror_asymmetry",
    "toy_score",
    "toy_score_consistency",
]
