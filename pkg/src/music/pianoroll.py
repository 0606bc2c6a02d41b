"""Binary pianorolls and their JSON file format.

File layout::

    {"version": 1, "tracks": 1, "steps_per_quarter": 4, "length": 16,
     "notes": [[track, pitch, onset, offset], ...]}

Optional ``"chords"`` and ``"key"`` entries carry chord annotations and are
read by :mod:`src.context.labels`.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Union

import numpy as np

from ..core.errors import FormatError, NonBinary

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
N_PITCHES = 128


@dataclass(frozen=True, eq=False)
class Pianoroll:
    """Binary ``tracks x 128 x time`` grid."""

    grid: np.ndarray
    steps_per_quarter: int
    name: str = ""

    def __post_init__(self) -> None:
        arr = np.asarray(self.grid)
        if arr.ndim != 3 or arr.shape[1] != N_PITCHES:
            raise FormatError(
                f"grid must be tracks x {N_PITCHES} x time, got {arr.shape}"
            )
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise NonBinary(f"pianoroll {self.name!r} holds values outside {{0, 1}}")
        if self.steps_per_quarter < 1:
            raise FormatError(
                f"steps_per_quarter must be >= 1, got {self.steps_per_quarter}"
            )
        grid = arr.astype(np.uint8)
        grid.setflags(write=False)
        object.__setattr__(self, "grid", grid)

    @property
    def tracks(self) -> int:
        return int(self.grid.shape[0])

    @property
    def length(self) -> int:
        return int(self.grid.shape[2])

    def active(self) -> np.ndarray:
        """``128 x time`` union over tracks."""
        return self.grid.any(axis=0)

    def onsets(self) -> np.ndarray:
        """Rising edges per ``(track, pitch, t)``."""
        previous = np.zeros_like(self.grid)
        previous[:, :, 1:] = self.grid[:, :, :-1]
        return (self.grid == 1) & (previous == 0)

    def tiled(self, times: int) -> Pianoroll:
        return Pianoroll(
            np.tile(self.grid, (1, 1, times)), self.steps_per_quarter, self.name
        )


def _int(data: dict[str, Any], key: str) -> int:
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"field {key!r} must be an integer, got {value!r}")
    return value


def pianoroll_from_dict(data: dict[str, Any], name: str = "") -> Pianoroll:
    if not isinstance(data, dict):
        raise FormatError("pianoroll must be a JSON object")
    if data.get("version") != FORMAT_VERSION:
        raise FormatError(f"unsupported pianoroll version {data.get('version')!r}")
    tracks = _int(data, "tracks")
    spq = _int(data, "steps_per_quarter")
    length = _int(data, "length")
    if tracks < 1 or spq < 1 or length < 0:
        raise FormatError(
            f"bad shape: tracks={tracks}, steps_per_quarter={spq}, length={length}"
        )
    padded = -(-length // spq) * spq
    grid = np.zeros((tracks, N_PITCHES, padded), dtype=np.uint8)
    notes = data.get("notes", [])
    if not isinstance(notes, list):
        raise FormatError("'notes' must be a list")
    for i, note in enumerate(notes):
        if not isinstance(note, list) or len(note) != 4 or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in note
        ):
            raise FormatError(
                f"note {i} must be [track, pitch, onset, offset], got {note!r}"
            )
        track, pitch, onset, offset = note
        if not 0 <= track < tracks or not 0 <= pitch < N_PITCHES:
            raise FormatError(f"note {i}: track {track} or pitch {pitch} out of range")
        if not 0 <= onset < offset <= length:
            raise FormatError(
                f"note {i}: need 0 <= onset < offset <= {length}, got {onset}, {offset}"
            )
        grid[track, pitch, onset:offset] = 1
    if padded != length:
        logger.debug("padded %r from %d to %d steps", name, length, padded)
    return Pianoroll(grid, spq, name)


def load_pianoroll(source: Union[bytes, str, Path], name: str = "") -> Pianoroll:
    """Parse a pianoroll from raw bytes or a file path."""
    if isinstance(source, Path):
        name = name or source.stem
        source = source.read_bytes()
    try:
        data = json.loads(source)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise FormatError(f"pianoroll is not valid JSON: {exc}") from exc
    return pianoroll_from_dict(data, name)


def pianoroll_to_dict(pr: Pianoroll) -> dict[str, Any]:
    """Inverse of :func:`pianoroll_from_dict` (one note per contiguous run)."""
    notes: list[list[int]] = []
    padded = np.zeros((pr.tracks, N_PITCHES, pr.length + 2), dtype=np.int8)
    padded[:, :, 1:-1] = pr.grid
    edges = np.diff(padded, axis=2)
    for track, pitch in zip(*np.nonzero(edges.any(axis=2))):
        starts = np.flatnonzero(edges[track, pitch] == 1)
        ends = np.flatnonzero(edges[track, pitch] == -1)
        notes.extend(
            [int(track), int(pitch), int(s), int(e)] for s, e in zip(starts, ends)
        )
    return {
        "version": FORMAT_VERSION,
        "tracks": pr.tracks,
        "steps_per_quarter": pr.steps_per_quarter,
        "length": pr.length,
        "notes": sorted(notes, key=lambda n: (n[2], n[0], n[1])),
    }


def dump_pianoroll(pr: Pianoroll) -> bytes:
    return json.dumps(pianoroll_to_dict(pr)).encode("utf-8")
