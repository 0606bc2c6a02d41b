"""Pianoroll I/O and symbolic-music similarity metrics."""

from __future__ import annotations

from .metrics import (
    ChromaOnsetSequence,
    chroma_onsets,
    chroma_similarity,
    grooving_similarity,
    grooving_xor,
    metric_bundle,
    note_density_distance,
    ssmd,
)
from .pianoroll import Pianoroll, dump_pianoroll, load_pianoroll

__all__ = [
    "ChromaOnsetSequence",
    "Pianoroll",
    "chroma_onsets",
    "chroma_similarity",
    "dump_pianoroll",
    "grooving_similarity",
    "grooving_xor",
    "load_pianoroll",
    "metric_bundle",
    "note_density_distance",
    "ssmd",
]
