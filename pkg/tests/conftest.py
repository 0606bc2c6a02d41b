"""Shared fixtures for the stripes test suite."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np
import pytest

from src.config import Config
from src.core.params import make_params
from src.core.rng import gaussian, stream, uniform_open_closed
from src.core.types import (
    InitScheme,
    Method,
    PEParams,
    PositionalIndexSequence,
    QKMatrices,
)
from src.kernels.fixtures import pin_witness
from src.music.pianoroll import N_PITCHES, Pianoroll

FIXTURES = Path(__file__).parent / "fixtures"
WITNESS_SEED = 0

Instance = tuple[QKMatrices, PositionalIndexSequence, PositionalIndexSequence, PEParams]


@pytest.fixture(autouse=True)
def isolated_config(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    """Keep run history and artifacts inside the test's temp directory."""
    monkeypatch.setattr(Config, "DB_PATH", str(tmp_path / "runs.db"))
    monkeypatch.setattr(Config, "OUTPUT_DIR", str(tmp_path / "runs"))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def pinned_witness(fixtures_dir: Path) -> Callable[[Method], Path]:
    """Path of the pinned search witness for a method, written on first use."""

    def locate(method: Method) -> Path:
        path = fixtures_dir / f"{method.value}_pd_witness.json"
        if not path.exists():
            pin_witness(method, path, seed=WITNESS_SEED)
        return path

    return locate


@pytest.fixture
def instance() -> Callable[..., Instance]:
    """Seeded random attention problem at structural positions."""

    def build(
        method: Method,
        seed: int = 7,
        length: int = 16,
        dim: int = 8,
        label_dim: int = 1,
        values: int = 0,
    ) -> Instance:
        gen = stream(seed, length, dim, label_dim)
        qk = QKMatrices(
            gaussian(seed, (length, dim), 0),
            gaussian(seed, (length, dim), 1),
            gaussian(seed, (length, values), 2) if values else None,
        )
        p_q = PositionalIndexSequence.vectors(
            8.0 * uniform_open_closed(gen, (length, label_dim))
        )
        p_k = PositionalIndexSequence.vectors(
            8.0 * uniform_open_closed(gen, (length, label_dim))
        )
        params = make_params(
            method, dim, label_dim, scheme=InitScheme.RANDOM_UNIFORM, seed=seed
        )
        return qk, p_q, p_k, params

    return build


@pytest.fixture
def make_roll() -> Callable[..., Pianoroll]:
    """Pianoroll from ``(pitch, onset, offset)`` notes on one track."""

    def build(
        notes: list[tuple[int, int, int]], length: int, spq: int = 4, name: str = ""
    ) -> Pianoroll:
        grid = np.zeros((1, N_PITCHES, length), dtype=np.uint8)
        for pitch, onset, offset in notes:
            grid[0, pitch, onset:offset] = 1
        return Pianoroll(grid, spq, name)

    return build


@pytest.fixture
def write_roll(tmp_path: Path) -> Callable[..., Path]:
    """Write a pianoroll JSON document (optionally annotated) and return its path."""

    def build(
        name: str,
        notes: list[list[int]],
        length: int,
        spq: int = 4,
        chords: Optional[list[list[int]]] = None,
        key: Optional[list[Any]] = None,
    ) -> Path:
        doc: dict[str, Any] = {
            "version": 1,
            "tracks": 1,
            "steps_per_quarter": spq,
            "length": length,
            "notes": notes,
        }
        if chords is not None:
            doc["chords"] = chords
        if key is not None:
            doc["key"] = key
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return build
