"""Nonnegative feature maps for kernelized attention."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from ..core.rng import gaussian
from ..core.types import FloatArray


@dataclass(frozen=True)
class PositiveShift:
    """``x + 1`` for ``x >= 0`` and ``exp(x)`` below; continuous and positive."""

    name: str = "positive-shift"


@dataclass(frozen=True)
class ExpRandomFeatures:
    """Positive random features ``exp(<w_i, x> - |x|² / 2) / sqrt(r)``.

    ``w_i`` are standard normal, drawn from the ``(seed, r, width)`` stream,
    so both sides of an attention call share them.
    """

    r: int
    seed: int = 0
    name: str = "exp-random-features"

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError(f"random feature count must be >= 1, got r={self.r}")

    def projection(self, width: int) -> FloatArray:
        return gaussian(self.seed, (self.r, width), self.r, width)


FeatureMap = Union[PositiveShift, ExpRandomFeatures]


def phi(x: ArrayLike, variant: FeatureMap = PositiveShift()) -> FloatArray:
    """Apply *variant* to a row vector or to every row of a matrix."""
    arr = np.asarray(x, dtype=np.float64)
    if isinstance(variant, PositiveShift):
        # exp of the clipped value keeps the unused branch from overflowing
        return np.where(arr >= 0, arr + 1.0, np.exp(np.minimum(arr, 0.0)))
    rows = np.atleast_2d(arr)
    w = variant.projection(rows.shape[1])
    sq = 0.5 * np.sum(rows * rows, axis=1, keepdims=True)
    out = np.exp(rows @ w.T - sq) / np.sqrt(variant.r)
    return out if arr.ndim > 1 else out[0]


def describe(variant: FeatureMap) -> str:
    """Short label recorded alongside results."""
    if isinstance(variant, ExpRandomFeatures):
        return f"{variant.name}(r={variant.r},seed={variant.seed})"
    return variant.name
