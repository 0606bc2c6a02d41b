"""Objective similarity metrics between a target and a predicted pianoroll.

* SSMD: mean absolute difference of chroma self-similarity matrices, in [0, 100].
* CS: mean per-half-measure chroma cosine similarity, in [-100, 100].
* GS: quarter-note groove agreement, ``(1 - mean XOR) * 100``.
* NDD: mean share of target pitches missing per 16th-note bin, in [0, 100].

Cosine similarity involving a zero vector is 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core.errors import LengthMismatch, ResolutionTooCoarse
from .pianoroll import Pianoroll

logger = logging.getLogger(__name__)

QUARTERS_PER_HALF_MEASURE = 2
SIXTEENTHS_PER_QUARTER = 4


@dataclass(frozen=True, eq=False)
class ChromaOnsetSequence:
    """Onset counts per chroma, one 12-vector per half-measure."""

    vectors: np.ndarray

    def __len__(self) -> int:
        return int(self.vectors.shape[0])


def chroma_onsets(
    pr: Pianoroll, quarters_per_half: int = QUARTERS_PER_HALF_MEASURE
) -> ChromaOnsetSequence:
    width = pr.steps_per_quarter * quarters_per_half
    count = -(-pr.length // width)
    vectors = np.zeros((count, 12), dtype=np.int64)
    tracks, pitches, steps = np.nonzero(pr.onsets())
    np.add.at(vectors, (steps // width, pitches % 12), 1)
    return ChromaOnsetSequence(vectors)


def _check_pair(target: Pianoroll, pred: Pianoroll) -> None:
    if (
        target.length != pred.length
        or target.steps_per_quarter != pred.steps_per_quarter
    ):
        raise LengthMismatch(
            f"target is {target.length} steps at {target.steps_per_quarter}/quarter, "
            f"prediction is {pred.length} steps at {pred.steps_per_quarter}/quarter"
        )


def _unit_rows(vectors: np.ndarray) -> np.ndarray:
    rows = vectors.astype(np.float64)
    norms = np.linalg.norm(rows, axis=1, keepdims=True)
    return np.divide(rows, norms, out=np.zeros_like(rows), where=norms > 0)


def self_similarity(seq: ChromaOnsetSequence) -> np.ndarray:
    """Pairwise cosine similarities between half-measure chroma vectors."""
    unit = _unit_rows(seq.vectors)
    return unit @ unit.T


def ssmd(target: Pianoroll, pred: Pianoroll) -> float:
    _check_pair(target, pred)
    diff = np.abs(
        self_similarity(chroma_onsets(target)) - self_similarity(chroma_onsets(pred))
    )
    if diff.size == 0:
        return 0.0
    return float(diff.mean() * 50.0)


def chroma_similarity(target: Pianoroll, pred: Pianoroll) -> float:
    _check_pair(target, pred)
    t = _unit_rows(chroma_onsets(target).vectors)
    p = _unit_rows(chroma_onsets(pred).vectors)
    if t.shape[0] == 0:
        return 0.0
    return float(np.mean(np.sum(t * p, axis=1)) * 100.0)


def grooving_pattern(pr: Pianoroll) -> np.ndarray:
    """1 for each quarter note holding at least one onset."""
    count = -(-pr.length // pr.steps_per_quarter)
    groove = np.zeros(count, dtype=np.uint8)
    steps = np.flatnonzero(pr.onsets().any(axis=(0, 1)))
    groove[steps // pr.steps_per_quarter] = 1
    return groove


def grooving_xor(target: Pianoroll, pred: Pianoroll) -> float:
    """Raw mean of ``groove(target) XOR groove(pred)``."""
    _check_pair(target, pred)
    xor = np.bitwise_xor(grooving_pattern(target), grooving_pattern(pred))
    return float(xor.mean()) if xor.size else 0.0


def grooving_similarity(target: Pianoroll, pred: Pianoroll) -> float:
    return (1.0 - grooving_xor(target, pred)) * 100.0


def _pitch_counts(pr: Pianoroll) -> np.ndarray:
    """Distinct active pitches per 16th-note bin."""
    bins = np.arange(pr.length) * SIXTEENTHS_PER_QUARTER // pr.steps_per_quarter
    count = -(-pr.length * SIXTEENTHS_PER_QUARTER // pr.steps_per_quarter)
    present = np.zeros((count, 128), dtype=bool)
    pitches, steps = np.nonzero(pr.active())
    present[bins[steps], pitches] = True
    return present.sum(axis=1)


def note_density_distance(target: Pianoroll, pred: Pianoroll) -> float:
    _check_pair(target, pred)
    if target.steps_per_quarter < SIXTEENTHS_PER_QUARTER:
        raise ResolutionTooCoarse(
            f"16th-note bins need >= {SIXTEENTHS_PER_QUARTER} steps per quarter, "
            f"got {target.steps_per_quarter}"
        )
    t = _pitch_counts(target)
    p = _pitch_counts(pred)
    counted = t > 0
    if not counted.any():
        logger.warning("target %r has no active pitches; NDD is 0", target.name)
        return 0.0
    missing = np.maximum(0, t[counted] - p[counted]) / t[counted]
    return float(missing.mean() * 100.0)


def metric_bundle(target: Pianoroll, pred: Pianoroll) -> dict[str, Optional[float]]:
    """All four metrics keyed ``ssmd``, ``cs``, ``gs`` and ``ndd``.

    Below 16th-note resolution ``ndd`` is ``None``; the other three still apply.
    """
    bundle: dict[str, Optional[float]] = {
        "ssmd": ssmd(target, pred),
        "cs": chroma_similarity(target, pred),
        "gs": grooving_similarity(target, pred),
    }
    try:
        bundle["ndd"] = note_density_distance(target, pred)
    except ResolutionTooCoarse as exc:
        logger.warning("NDD rejected for %r: %s", target.name, exc)
        bundle["ndd"] = None
    return bundle
