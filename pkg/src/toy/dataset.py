"""Synthetic angular dataset with Gaussian contexts."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..core.errors import IndexOutOfRange
from ..core.rng import gaussian
from ..core.types import FloatArray, frozen

logger = logging.getLogger(__name__)


def context_centers(n_contexts: int) -> FloatArray:
    """``C_k = k π / (N + 1)`` for ``k = 1..N``: evenly spaced inside (0, π)."""
    return np.arange(1, n_contexts + 1, dtype=np.float64) * np.pi / (n_contexts + 1)


@dataclass(frozen=True, eq=False)
class ToyDataset:
    """Points ``(ψ_j, ξ_j, context_j)``.

    ``ξ_j`` is the center of the Gaussian that ``ψ_j`` was drawn from.
    """

    psi: FloatArray
    xi: FloatArray
    context: np.ndarray
    n_contexts: int
    sigma: float
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "psi", frozen(self.psi, ndim=1))
        object.__setattr__(self, "xi", frozen(self.xi, ndim=1))
        ctx = np.array(self.context, dtype=np.int64)
        ctx.setflags(write=False)
        object.__setattr__(self, "context", ctx)

    def __len__(self) -> int:
        return int(self.psi.shape[0])

    @property
    def centers(self) -> FloatArray:
        return context_centers(self.n_contexts)

    def point(self, index: int) -> tuple[float, float, int]:
        if not 0 <= index < len(self):
            raise IndexOutOfRange(f"point {index} out of range for {len(self)} points")
        return float(self.psi[index]), float(self.xi[index]), int(self.context[index])


def generate_toy(
    n_contexts: int, points: int, sigma: float, seed: int = 0
) -> ToyDataset:
    """Draw *points* angles, assigning point ``j`` to context ``j mod N``."""
    if n_contexts < 1 or points < 1:
        raise ValueError(f"need N >= 1 and P >= 1, got N={n_contexts}, P={points}")
    if sigma <= 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    centers = context_centers(n_contexts)
    context = np.arange(points) % n_contexts
    xi = centers[context]
    psi = xi + sigma * gaussian(seed, points, n_contexts, points)
    logger.debug(
        "generate_toy N=%d P=%d sigma=%g seed=%d", n_contexts, points, sigma, seed
    )
    return ToyDataset(psi, xi, context, n_contexts, sigma, seed)
