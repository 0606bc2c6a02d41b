"""Kernelized attention paths, feature maps and scaling benchmarks."""

from __future__ import annotations

from .bench import BenchRow, benchmark_scaling
from .feature_maps import ExpRandomFeatures, PositiveShift, phi
from .paths import AttentionOutput, linear_path, quadratic_path

__all__ = [
    "AttentionOutput",
    "BenchRow",
    "ExpRandomFeatures",
    "PositiveShift",
    "benchmark_scaling",
    "linear_path",
    "phi",
    "quadratic_path",
]
