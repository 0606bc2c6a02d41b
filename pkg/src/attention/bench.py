"""Wall-clock scaling of the linear and quadratic attention paths."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..core.params import make_params
from ..core.rng import gaussian
from ..core.types import Method, Pooling, PositionalIndexSequence, QKMatrices
from ..features.transforms import default_pooling
from .feature_maps import FeatureMap, PositiveShift
from .paths import AttentionOutput, linear_path, quadratic_path

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("method", "T", "D", "path", "median_ns", "repeats")

_PATHS: dict[str, Callable[..., AttentionOutput]] = {
    "linear": linear_path,
    "quadratic": quadratic_path,
}


@dataclass(frozen=True)
class BenchRow:
    method: str
    length: int
    dim: int
    path: str
    median_ns: int
    repeats: int

    def as_csv(self) -> tuple[str, ...]:
        return (
            self.method, str(self.length), str(self.dim), self.path,
            str(self.median_ns), str(self.repeats),
        )


def benchmark_scaling(
    method: Method,
    lengths: Sequence[int],
    dim: int,
    repeats: int,
    seed: int = 0,
    pooling: Pooling | None = None,
    variant: FeatureMap = PositiveShift(),
) -> list[BenchRow]:
    """Median runtime per ``(T, path)`` over *repeats* runs.

    Inputs are Gaussian ``Q``, ``K`` and ``V`` at time positions; one warm-up
    call precedes the timed runs of each cell.
    """
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    if any(b < a for a, b in zip(lengths, lengths[1:])):
        raise ValueError(f"lengths must be ascending, got {list(lengths)}")
    pool = default_pooling(method) if pooling is None else pooling
    params = make_params(method, dim)
    rows: list[BenchRow] = []
    for length in lengths:
        qk = QKMatrices(
            gaussian(seed, (length, dim), length, 0),
            gaussian(seed, (length, dim), length, 1),
            gaussian(seed, (length, dim), length, 2),
        )
        positions = PositionalIndexSequence.time(length)
        for name, path in _PATHS.items():
            path(qk, positions, positions, method, params, pool, variant)
            samples = []
            for _ in range(repeats):
                start = time.perf_counter_ns()
                path(qk, positions, positions, method, params, pool, variant)
                samples.append(time.perf_counter_ns() - start)
            median = int(np.median(samples))
            rows.append(BenchRow(method.value, length, dim, name, median, repeats))
            logger.debug(
                "bench %s T=%d path=%s median_ns=%d", method.value, length, name, median
            )
    return rows
