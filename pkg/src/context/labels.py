"""Context labelling of pianoroll events.

Four context types map every event (one per active cell, or per onset) to a
token:

* ``TIME``: the event's timestep.
* ``REP``: the chord's global token re-numbered within the sample.
* ``KEY``: the chord transposed down by the key's tonic, tagged with the mode.
* ``BIN``: the chord's 12-bit chroma mask as an integer.

A chord's global token is ``root * 4096 + chroma_mask``; bit ``i`` of the
mask is pitch class ``i`` (C = 0).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Sequence

import numpy as np

from ..core.errors import CoverageGap, FormatError, MissingAnnotation
from ..music.pianoroll import Pianoroll

logger = logging.getLogger(__name__)

CHROMA_STATES = 4096


class ContextType(str, Enum):
    TIME = "time"
    REP = "rep"
    KEY = "key"
    BIN = "bin"


class RepOrder(str, Enum):
    ID = "id"
    APPEARANCE = "appearance"


def rotate_chroma(mask: int, semitones: int) -> int:
    """Shift every pitch class of *mask* down by *semitones*."""
    shift = semitones % 12
    full = (mask << 12) | mask
    return (full >> shift) & 0xFFF


@dataclass(frozen=True)
class ChordSpan:
    start: int
    end: int
    root: int
    chroma: int

    def __post_init__(self) -> None:
        if not 0 <= self.root < 12:
            raise FormatError(f"chord root must be in 0..11, got {self.root}")
        if not 0 < self.chroma < CHROMA_STATES:
            raise FormatError(
                f"chord chroma must be a non-empty 12-bit mask, got {self.chroma}"
            )
        if self.end <= self.start:
            raise FormatError(
                f"chord span needs start < end, got [{self.start}, {self.end})"
            )

    @property
    def token(self) -> int:
        return self.root * CHROMA_STATES + self.chroma


@dataclass(frozen=True)
class Key:
    tonic: int
    mode: str

    def __post_init__(self) -> None:
        if not 0 <= self.tonic < 12 or self.mode not in ("major", "minor"):
            raise FormatError(
                f"key must be (0..11, major|minor), got ({self.tonic}, {self.mode!r})"
            )


@dataclass(frozen=True)
class ChordAnnotation:
    spans: tuple[ChordSpan, ...]
    key: Optional[Key] = None

    def check_coverage(self, length: int) -> None:
        """Spans must tile ``[0, length)`` in order without gaps or overlaps."""
        cursor = 0
        for span in self.spans:
            if span.start != cursor:
                kind = "gap" if span.start > cursor else "overlap"
                raise CoverageGap(f"chord {kind} at step {min(cursor, span.start)}")
            cursor = span.end
        if cursor < length:
            raise CoverageGap(f"chords end at step {cursor}, roll has {length} steps")

    def span_index(self, length: int) -> np.ndarray:
        """Index of the span covering each step in ``[0, length)``."""
        idx = np.empty(length, dtype=np.int64)
        for i, span in enumerate(self.spans):
            idx[span.start:min(span.end, length)] = i
        return idx


def annotation_from_dict(data: dict[str, Any]) -> Optional[ChordAnnotation]:
    """Read ``"chords"`` and ``"key"`` from a pianoroll document, if present."""
    chords = data.get("chords")
    key_data = data.get("key")
    if chords is None and key_data is None:
        return None
    try:
        spans = tuple(ChordSpan(*map(int, c)) for c in (chords or []))
        key = Key(int(key_data[0]), str(key_data[1])) if key_data is not None else None
    except FormatError:
        raise
    except (TypeError, ValueError, IndexError) as exc:
        raise FormatError(f"malformed chord annotation: {exc}") from exc
    return ChordAnnotation(tuple(sorted(spans, key=lambda s: s.start)), key)


@dataclass(frozen=True, eq=False)
class LabeledEvents:
    """Parallel arrays of event pitches and context tokens."""

    pitches: np.ndarray
    labels: np.ndarray
    context: ContextType

    def __len__(self) -> int:
        return int(self.pitches.shape[0])

    @classmethod
    def concat(cls, parts: Sequence[LabeledEvents]) -> LabeledEvents:
        if not parts:
            raise ValueError("nothing to concatenate")
        return cls(
            np.concatenate([p.pitches for p in parts]),
            np.concatenate([p.labels for p in parts]),
            parts[0].context,
        )


def _chord_labels(
    ann: ChordAnnotation, ctx: ContextType, rep_order: RepOrder
) -> np.ndarray:
    """Token per span for the chord-based contexts."""
    if ctx is ContextType.BIN:
        return np.array([s.chroma for s in ann.spans], dtype=np.int64)
    if ctx is ContextType.KEY:
        if ann.key is None:
            raise MissingAnnotation("KEY context needs the sample's key")
        tonic = ann.key.tonic
        mode = 0 if ann.key.mode == "major" else 1
        return np.array(
            [
                (mode * 12 + (s.root - tonic) % 12) * CHROMA_STATES + rotate_chroma(
                    s.chroma, tonic
                )
                for s in ann.spans
            ],
            dtype=np.int64,
        )
    tokens = [s.token for s in ann.spans]
    if rep_order is RepOrder.ID:
        ranking = {tok: i for i, tok in enumerate(sorted(set(tokens)))}
    else:
        ranking = {}
        for tok in tokens:
            ranking.setdefault(tok, len(ranking))
    return np.array([ranking[t] for t in tokens], dtype=np.int64)


def assign_context(
    pr: Pianoroll,
    ann: Optional[ChordAnnotation],
    ctx: ContextType,
    rep_order: RepOrder = RepOrder.ID,
    onset_only: bool = False,
) -> LabeledEvents:
    """Label every active cell (or every onset) of *pr* with its context token."""
    cells = pr.onsets() if onset_only else pr.grid.astype(bool)
    _, pitches, steps = np.nonzero(cells)
    if ctx is ContextType.TIME:
        labels = steps.astype(np.int64)
    else:
        if ann is None or not ann.spans:
            raise MissingAnnotation(
                f"{ctx.value.upper()} context needs chord annotations"
            )
        ann.check_coverage(pr.length)
        per_span = _chord_labels(ann, ctx, rep_order)
        labels = per_span[ann.span_index(pr.length)[steps]]
    if pitches.size == 0:
        logger.warning("pianoroll %r has no events", pr.name)
    return LabeledEvents(pitches.astype(np.int64), labels, ctx)
