"""Shared domain types, parameter construction and seeded randomness."""

from __future__ import annotations

from .errors import StripesError
from .params import make_params
from .types import (
    InitScheme,
    Method,
    MethodTag,
    PEParams,
    Pooling,
    PositionalIndexSequence,
    PositionKind,
    QKMatrices,
    ScoreMatrix,
    Side,
)

__all__ = [
    "InitScheme",
    "Method",
    "MethodTag",
    "PEParams",
    "Pooling",
    "PositionKind",
    "PositionalIndexSequence",
    "QKMatrices",
    "ScoreMatrix",
    "Side",
    "StripesError",
    "make_params",
]
